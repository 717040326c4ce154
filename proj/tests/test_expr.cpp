#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opmech/expr.hpp"
#include "support/generators.hpp"

using namespace opmech;

TEST_CASE("parser handles generators and constants", "[expr]") {
    CHECK(parse_expression("q") == NCPolynomial::position());
    CHECK(parse_expression("p") == NCPolynomial::momentum());
    CHECK(parse_expression("hbar") == NCPolynomial::hbar());
    CHECK(parse_expression("3/2") ==
          NCPolynomial::from_term({0, 0, 0}, GaussianRational(Rational(3, 2))));
    CHECK(parse_expression("i*i") ==
          NCPolynomial::from_term({0, 0, 0}, GaussianRational(Rational(-1))));
}

TEST_CASE("parser respects the noncommutative product", "[expr]") {
    CHECK(parse_expression("p*q") == parse_expression("q*p - i*hbar"));
    CHECK(parse_expression("q^2*p") == parse_expression("q*q*p"));
    CHECK(parse_expression("(q+p)^2") == parse_expression("q^2 + q*p + p*q + p^2"));
    CHECK(parse_expression(" q * p - p * q ") == parse_expression("i*hbar"));
}

TEST_CASE("symmetrized product in expressions", "[expr]") {
    // q @ p is the Weyl-symmetrized product (q p + p q)/2
    CHECK(parse_expression("q@p") == parse_expression("(q*p + p*q) * 1/2"));
    CHECK(parse_expression("q@p") == weyl_monomial(1, 1));
    CHECK(parse_expression("(q@p)@q") == weyl_monomial(2, 1));
    CHECK(parse_expression("q@1") == NCPolynomial::position());
}

TEST_CASE("parse errors carry positions", "[expr]") {
    CHECK_THROWS_AS(parse_expression("q+"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("(q"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("q q"), std::invalid_argument);
}

TEST_CASE("printer emits canonical re-parseable text", "[expr]") {
    CHECK(to_text(NCPolynomial::zero()) == "0");
    CHECK(to_text(parse_expression("q*p")) == "q*p");
    CHECK(to_text(parse_expression("p*q")) == "-i*hbar + q*p");
    CHECK(to_text(weyl_monomial(1, 1)) == "-1/2*i*hbar + q*p");
    CHECK(to_text(to_weyl_basis(parse_expression("q*p"))) == "1/2*i*hbar*W(0,0) + W(1,1)");

    std::mt19937 rng(401);
    for (int trial = 0; trial < 80; ++trial) {
        NCPolynomial f = testsupport::random_ncpoly(rng, 5, 2, 5);
        CHECK(parse_expression(to_text(f)) == f);
    }
}
