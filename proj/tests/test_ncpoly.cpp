#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opmech/ncpoly.hpp"
#include "support/generators.hpp"

using namespace opmech;

namespace {

NCPolynomial term(int n, int m, int k, GaussianRational c) {
    return NCPolynomial::from_term({n, m, k}, std::move(c));
}

const GaussianRational kOne = GaussianRational::one();
const GaussianRational kI = GaussianRational::imaginary_unit();

}  // namespace

TEST_CASE("normal_order of short words", "[ncpoly]") {
    CHECK(normal_order(word_from_string("QP")) == term(1, 1, 0, kOne));

    NCPolynomial pq = term(1, 1, 0, kOne) + term(0, 0, 1, -kI);
    CHECK(normal_order(word_from_string("PQ")) == pq);

    // p p q = q p^2 - 2 i hbar p
    NCPolynomial ppq = term(1, 2, 0, kOne) + term(0, 1, 1, GaussianRational(Rational(-2)) * kI);
    CHECK(normal_order(word_from_string("PPQ")) == ppq);

    CHECK(normal_order(Word{}) == NCPolynomial::identity());
}

TEST_CASE("operator product basics", "[ncpoly]") {
    NCPolynomial q = NCPolynomial::position();
    NCPolynomial p = NCPolynomial::momentum();

    CHECK(q * p == term(1, 1, 0, kOne));
    CHECK(p * q == term(1, 1, 0, kOne) + term(0, 0, 1, -kI));
    // (q p) q = q^2 p - i hbar q
    CHECK((q * p) * q == term(2, 1, 0, kOne) + term(1, 0, 1, -kI));
    CHECK(q * NCPolynomial::identity() == q);
}

TEST_CASE("product is consistent with normal_order on concatenation", "[ncpoly]") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        Word w1 = testsupport::random_word(rng, 5);
        Word w2 = testsupport::random_word(rng, 5);
        Word cat = w1;
        cat.insert(cat.end(), w2.begin(), w2.end());
        CHECK(normal_order(w1) * normal_order(w2) == normal_order(cat));
    }
}

TEST_CASE("product is bilinear and associative", "[ncpoly]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        NCPolynomial f = testsupport::random_ncpoly(rng, 3);
        NCPolynomial g = testsupport::random_ncpoly(rng, 3);
        NCPolynomial h = testsupport::random_ncpoly(rng, 3);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f + g) * h == f * h + g * h);
    }
}

TEST_CASE("canonical commutation relation", "[ncpoly]") {
    NCPolynomial q = NCPolynomial::position();
    NCPolynomial p = NCPolynomial::momentum();

    CHECK(commutator(q, p) == term(0, 0, 1, kI));
    CHECK(commutator(q, q).is_zero());
    CHECK(commutator(p, p).is_zero());
    // [q^2, p] = 2 i hbar q
    CHECK(commutator(q.pow(2), p) == term(1, 0, 1, GaussianRational(Rational(2)) * kI));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        NCPolynomial f = testsupport::random_ncpoly(rng, 4);
        CHECK(commutator(f, f).is_zero());
    }
}

TEST_CASE("adjoint is an involution reversing products", "[ncpoly]") {
    NCPolynomial q = NCPolynomial::position();
    NCPolynomial p = NCPolynomial::momentum();

    // (q p)^dag = p q = q p - i hbar
    CHECK(adjoint(q * p) == term(1, 1, 0, kOne) + term(0, 0, 1, -kI));
    CHECK(adjoint(q.pow(5)) == q.pow(5));
    CHECK(adjoint(term(0, 0, 0, kI)) == term(0, 0, 0, -kI));

    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        NCPolynomial f = testsupport::random_ncpoly(rng, 4);
        NCPolynomial g = testsupport::random_ncpoly(rng, 4);
        CHECK(adjoint(adjoint(f)) == f);
        CHECK(adjoint(f * g) == adjoint(g) * adjoint(f));
    }
}

TEST_CASE("hbar division", "[ncpoly]") {
    NCPolynomial q = NCPolynomial::position();
    NCPolynomial p = NCPolynomial::momentum();

    NCPolynomial c = commutator(q, p);
    CHECK(c.divide_hbar() == term(0, 0, 0, kI));
    CHECK_THROWS_AS(q.divide_hbar(), std::domain_error);
}

TEST_CASE("term map invariants", "[ncpoly]") {
    NCPolynomial f = term(1, 1, 0, kOne);
    f += term(1, 1, 0, -kOne);
    CHECK(f.is_zero());
    CHECK(f.term_count() == 0);

    // scalar zero clears the map
    NCPolynomial g = term(2, 0, 0, kOne) * GaussianRational::zero();
    CHECK(g.is_zero());
}
