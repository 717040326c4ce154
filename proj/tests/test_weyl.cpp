#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opmech/weyl.hpp"
#include "support/commutative_oracle.hpp"
#include "support/generators.hpp"

using namespace opmech;

namespace {

NCPolynomial nterm(int n, int m, int k, GaussianRational c) {
    return NCPolynomial::from_term({n, m, k}, std::move(c));
}

WeylPolynomial wterm(int n, int m, int k, GaussianRational c) {
    return WeylPolynomial::from_term({n, m, k}, std::move(c));
}

const GaussianRational kOne = GaussianRational::one();
const GaussianRational kI = GaussianRational::imaginary_unit();
const GaussianRational kHalfI{Rational(0), Rational(1, 2)};

}  // namespace

TEST_CASE("weyl monomial small cases", "[weyl]") {
    // W(1,1) = q p - (i/2) hbar
    CHECK(weyl_monomial(1, 1) == nterm(1, 1, 0, kOne) + nterm(0, 0, 1, -kHalfI));
    // W(2,1) = q^2 p - i hbar q
    CHECK(weyl_monomial(2, 1) == nterm(2, 1, 0, kOne) + nterm(1, 0, 1, -kI));
    CHECK(weyl_monomial(4, 0) == nterm(4, 0, 0, kOne));
    CHECK(weyl_monomial(0, 3) == nterm(0, 3, 0, kOne));
    CHECK(weyl_monomial(0, 0) == NCPolynomial::identity());
}

TEST_CASE("enumeration and recursion paths agree", "[weyl]") {
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; n + m <= 8; ++m)
            CHECK(weyl_monomial_enumerated(n, m) == weyl_monomial(n, m));
    CHECK_THROWS_AS(weyl_monomial_enumerated(7, 7), EnumerationCapExceeded);
}

TEST_CASE("weyl monomials are self-adjoint", "[weyl]") {
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; n + m <= 6; ++m) {
            NCPolynomial w = weyl_monomial(n, m);
            CHECK(adjoint(w) == w);
        }
}

TEST_CASE("weyl monomial is triangular in total degree", "[weyl]") {
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; n + m <= 5; ++m) {
            NCPolynomial w = weyl_monomial(n, m);
            CHECK(w.coefficient({n, m, 0}) == kOne);
            for (const auto& [k, c] : w.terms()) {
                if (k.q_exp == n && k.p_exp == m) continue;
                CHECK(k.q_exp + k.p_exp < n + m);
            }
        }
}

TEST_CASE("basis conversion examples", "[weyl]") {
    CHECK(to_weyl_basis(NCPolynomial::position()) == wterm(1, 0, 0, kOne));
    // q p = W(1,1) + (i/2) hbar W(0,0)
    CHECK(to_weyl_basis(nterm(1, 1, 0, kOne)) == wterm(1, 1, 0, kOne) + wterm(0, 0, 1, kHalfI));
    // q^2 p = W(2,1) + i hbar W(1,0)
    CHECK(to_weyl_basis(nterm(2, 1, 0, kOne)) == wterm(2, 1, 0, kOne) + wterm(1, 0, 1, kI));

    CHECK(from_weyl_basis(wterm(1, 1, 0, kOne)) ==
          nterm(1, 1, 0, kOne) + nterm(0, 0, 1, -kHalfI));
    CHECK(from_weyl_basis(WeylPolynomial::unit()) == NCPolynomial::identity());
    CHECK(from_weyl_basis(wterm(1, 1, 0, kOne) + wterm(0, 0, 1, kHalfI)) ==
          nterm(1, 1, 0, kOne));
}

TEST_CASE("basis round trip on random polynomials", "[weyl]") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 120; ++trial) {
        NCPolynomial f = testsupport::random_ncpoly(rng, 8, 2, 6);
        CHECK(from_weyl_basis(to_weyl_basis(f)) == f);
    }
    std::mt19937 rng2(102);
    for (int trial = 0; trial < 120; ++trial) {
        WeylPolynomial w = testsupport::random_weyl(rng2, 8, 2, 6);
        CHECK(to_weyl_basis(from_weyl_basis(w)) == w);
    }
}

TEST_CASE("symmetrized product on monomials", "[weyl]") {
    CHECK(symmetrized_product(wterm(1, 0, 0, kOne), wterm(0, 1, 0, kOne)) ==
          wterm(1, 1, 0, kOne));

    // (q p - i hbar / 2) o q = q^2 p - i hbar q after leaving the Weyl basis
    NCPolynomial lhs = from_weyl_basis(
        symmetrized_product(wterm(1, 1, 0, kOne), wterm(1, 0, 0, kOne)));
    CHECK(lhs == weyl_monomial(2, 1));
}

TEST_CASE("symmetrized product is commutative associative with unit", "[weyl]") {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 80; ++trial) {
        WeylPolynomial a = testsupport::random_weyl(rng, 6);
        WeylPolynomial b = testsupport::random_weyl(rng, 6);
        WeylPolynomial c = testsupport::random_weyl(rng, 6);
        CHECK(symmetrized_product(a, b) == symmetrized_product(b, a));
        CHECK(symmetrized_product(symmetrized_product(a, b), c) ==
              symmetrized_product(a, symmetrized_product(b, c)));
        CHECK(symmetrized_product(a, WeylPolynomial::unit()) == a);
        CHECK(symmetrized_product(WeylPolynomial::unit(), a) == a);
    }
}

TEST_CASE("formal partials", "[weyl]") {
    CHECK(partial_q(wterm(2, 1, 0, kOne)) == wterm(1, 1, 0, GaussianRational(Rational(2))));
    CHECK(partial_p(wterm(3, 0, 0, kOne)).is_zero());
    CHECK(partial_q(wterm(1, 0, 0, kOne)) == WeylPolynomial::unit());

    // Leibniz with respect to the symmetrized product
    std::mt19937 rng(104);
    for (int trial = 0; trial < 60; ++trial) {
        WeylPolynomial a = testsupport::random_weyl(rng, 5);
        WeylPolynomial b = testsupport::random_weyl(rng, 5);
        CHECK(partial_q(symmetrized_product(a, b)) ==
              symmetrized_product(partial_q(a), b) + symmetrized_product(a, partial_q(b)));
        CHECK(partial_p(symmetrized_product(a, b)) ==
              symmetrized_product(partial_p(a), b) + symmetrized_product(a, partial_p(b)));
    }
}

TEST_CASE("symmetrized Poisson bracket examples", "[weyl]") {
    WeylPolynomial q = wterm(1, 0, 0, kOne);
    WeylPolynomial p = wterm(0, 1, 0, kOne);

    CHECK(symmetrized_poisson(q, p) == WeylPolynomial::unit());
    CHECK(symmetrized_poisson(wterm(2, 0, 0, kOne), p) ==
          wterm(1, 0, 0, GaussianRational(Rational(2))));

    // H = (W(0,2) + W(2,0)) / 2, {H, q}_S = -p
    WeylPolynomial h = (wterm(0, 2, 0, kOne) + wterm(2, 0, 0, kOne)) *
                       GaussianRational(Rational(1, 2));
    CHECK(symmetrized_poisson(h, q) == -p);
}

TEST_CASE("symmetrized Poisson bracket laws", "[weyl]") {
    std::mt19937 rng(105);
    auto sp = [](const WeylPolynomial& a, const WeylPolynomial& b) {
        return symmetrized_poisson(a, b);
    };
    for (int trial = 0; trial < 60; ++trial) {
        WeylPolynomial f = testsupport::random_weyl(rng, 4);
        WeylPolynomial g = testsupport::random_weyl(rng, 4);
        WeylPolynomial h = testsupport::random_weyl(rng, 4);
        GaussianRational s = testsupport::random_coefficient(rng);

        CHECK(sp(f, g) == -sp(g, f));
        CHECK(sp(f + g * s, h) == sp(f, h) + sp(g, h) * s);

        WeylPolynomial jacobi = sp(f, sp(g, h)) + sp(g, sp(h, f)) + sp(h, sp(f, g));
        CHECK(jacobi.is_zero());

        CHECK(sp(f, symmetrized_product(g, h)) ==
              symmetrized_product(sp(f, g), h) + symmetrized_product(g, sp(f, h)));
    }
}

TEST_CASE("degree <= 2 bracket agrees with the scaled commutator", "[weyl]") {
    std::mt19937 rng(106);
    const GaussianRational minus_i = -GaussianRational::imaginary_unit();
    for (int trial = 0; trial < 80; ++trial) {
        NCPolynomial f = testsupport::random_ncpoly(rng, 2, 1, 3);
        NCPolynomial g = testsupport::random_ncpoly(rng, 2, 1, 3);
        NCPolynomial comm = commutator(f, g);
        NCPolynomial bracket =
            from_weyl_basis(symmetrized_poisson(to_weyl_basis(f), to_weyl_basis(g)));
        CHECK(bracket == comm.divide_hbar() * minus_i);
    }
}

TEST_CASE("classical limit of Weyl structure matches the commutative oracle", "[weyl]") {
    using testsupport::CPoly;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            for (int c = 0; c <= 4; ++c)
                for (int d = 0; c + d <= 4; ++d) {
                    WeylPolynomial wa = wterm(a, b, 0, kOne);
                    WeylPolynomial wb = wterm(c, d, 0, kOne);

                    CPoly prod = testsupport::cpoly_from_classical(
                        classical_limit(from_weyl_basis(symmetrized_product(wa, wb))));
                    CPoly oracle_prod =
                        testsupport::cpoly_mul(testsupport::cpoly_from_weyl(wa),
                                               testsupport::cpoly_from_weyl(wb));
                    CHECK(prod == oracle_prod);

                    CPoly bracket = testsupport::cpoly_from_classical(
                        classical_limit(from_weyl_basis(symmetrized_poisson(wa, wb))));
                    CPoly oracle_bracket =
                        testsupport::cpoly_poisson(testsupport::cpoly_from_weyl(wa),
                                                   testsupport::cpoly_from_weyl(wb));
                    CHECK(bracket == oracle_bracket);
                }
}
