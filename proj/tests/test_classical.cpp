#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opmech/classical.hpp"
#include "opmech/weyl.hpp"
#include "support/commutative_oracle.hpp"
#include "support/generators.hpp"

using namespace opmech;

namespace {

const GaussianRational kOne = GaussianRational::one();
const GaussianRational kHalf{Rational(1, 2)};

}  // namespace

TEST_CASE("classical limit drops hbar terms", "[classical]") {
    // q p - (i/2) hbar -> qp
    NCPolynomial f = NCPolynomial::from_term({1, 1, 0}, kOne) +
                     NCPolynomial::from_term({0, 0, 1}, -GaussianRational::imaginary_unit() * kHalf);
    ClassicalPolynomial cf = classical_limit(f);
    ClassicalPolynomial expected;
    expected.add_term({1, 1}, kOne);
    CHECK(cf == expected);

    // hbar q -> 0
    CHECK(classical_limit(NCPolynomial::from_term({1, 0, 1}, kOne)).is_zero());
}

TEST_CASE("classical limit is multiplicative over the symmetrized product", "[classical]") {
    std::mt19937 rng(301);
    for (int trial = 0; trial < 60; ++trial) {
        WeylPolynomial a = testsupport::random_weyl(rng, 4);
        WeylPolynomial b = testsupport::random_weyl(rng, 4);
        auto lhs = testsupport::cpoly_from_classical(
            classical_limit(from_weyl_basis(symmetrized_product(a, b))));
        auto rhs = testsupport::cpoly_mul(
            testsupport::cpoly_from_classical(classical_limit(from_weyl_basis(a))),
            testsupport::cpoly_from_classical(classical_limit(from_weyl_basis(b))));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("classical evaluation", "[classical]") {
    ClassicalPolynomial h;
    h.add_term({2, 0}, kHalf);
    h.add_term({0, 2}, kHalf);
    CHECK(eval_classical(h, 0.0, 0.0) == 0.0);
    CHECK(eval_classical(h, 1.0, 1.0) == 1.0);

    ClassicalPolynomial qp;
    qp.add_term({1, 1}, kOne);
    CHECK(eval_classical(qp, 2.0, 3.0) == 6.0);

    ClassicalPolynomial bad;
    bad.add_term({1, 0}, GaussianRational::imaginary_unit());
    CHECK_THROWS_AS(eval_classical(bad, 1.0, 1.0), std::domain_error);
}
