#ifndef OPMECH_TESTS_GENERATORS_HPP
#define OPMECH_TESTS_GENERATORS_HPP

// Hand-rolled generators for the property-style tests. Fixed seeds keep the
// suite deterministic.

#include <random>

#include "opmech/ncpoly.hpp"
#include "opmech/weyl.hpp"

namespace testsupport {

inline opmech::GaussianRational random_coefficient(std::mt19937& rng, bool allow_imag = true) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    opmech::Rational re(num(rng), den(rng));
    opmech::Rational im(0);
    if (allow_imag && std::uniform_int_distribution<int>(0, 1)(rng))
        im = opmech::Rational(num(rng), den(rng));
    return {re, im};
}

inline opmech::Word random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> bit(0, 1);
    opmech::Word w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = bit(rng) ? opmech::Letter::Q : opmech::Letter::P;
    return w;
}

inline opmech::NCPolynomial random_ncpoly(std::mt19937& rng, int max_total_degree,
                                          int max_h = 1, int max_terms = 4,
                                          bool allow_imag = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_total_degree);
    std::uniform_int_distribution<int> hexp(0, max_h);
    opmech::NCPolynomial f;
    int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        int d = deg(rng);
        int n = std::uniform_int_distribution<int>(0, d)(rng);
        f.add_term({n, d - n, hexp(rng)}, random_coefficient(rng, allow_imag));
    }
    return f;
}

inline opmech::WeylPolynomial random_weyl(std::mt19937& rng, int max_total_degree,
                                          int max_h = 1, int max_terms = 4,
                                          bool allow_imag = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_total_degree);
    std::uniform_int_distribution<int> hexp(0, max_h);
    opmech::WeylPolynomial f;
    int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        int d = deg(rng);
        int n = std::uniform_int_distribution<int>(0, d)(rng);
        f.add_term({n, d - n, hexp(rng)}, random_coefficient(rng, allow_imag));
    }
    return f;
}

}  // namespace testsupport

#endif  // OPMECH_TESTS_GENERATORS_HPP
