#ifndef OPMECH_TESTS_COMMUTATIVE_ORACLE_HPP
#define OPMECH_TESTS_COMMUTATIVE_ORACLE_HPP

// Independent commutative-polynomial oracle for the classical-limit checks.
// Deliberately shares no code with the library: its own term map, its own
// product and Poisson bracket.

#include <map>
#include <utility>

#include "opmech/classical.hpp"
#include "opmech/rational.hpp"
#include "opmech/weyl.hpp"

namespace testsupport {

using opmech::GaussianRational;
using opmech::Rational;

struct CPoly {
    std::map<std::pair<int, int>, GaussianRational> terms;

    void add(int n, int m, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(n, m);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend bool operator==(const CPoly& a, const CPoly& b) { return a.terms == b.terms; }
};

inline CPoly cpoly_mul(const CPoly& a, const CPoly& b) {
    CPoly out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms)
            out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

inline CPoly cpoly_dq(const CPoly& f) {
    CPoly out;
    for (const auto& [k, c] : f.terms)
        if (k.first > 0) out.add(k.first - 1, k.second, c * GaussianRational(Rational(k.first)));
    return out;
}

inline CPoly cpoly_dp(const CPoly& f) {
    CPoly out;
    for (const auto& [k, c] : f.terms)
        if (k.second > 0) out.add(k.first, k.second - 1, c * GaussianRational(Rational(k.second)));
    return out;
}

inline CPoly cpoly_poisson(const CPoly& f, const CPoly& g) {
    CPoly out;
    CPoly t1 = cpoly_mul(cpoly_dq(f), cpoly_dp(g));
    CPoly t2 = cpoly_mul(cpoly_dq(g), cpoly_dp(f));
    for (const auto& [k, c] : t1.terms) out.add(k.first, k.second, c);
    for (const auto& [k, c] : t2.terms) out.add(k.first, k.second, -c);
    return out;
}

/// hbar = 0 image of a Weyl element, reading W(n,m) as q^n p^m.
inline CPoly cpoly_from_weyl(const opmech::WeylPolynomial& w) {
    CPoly out;
    for (const auto& [k, c] : w.terms())
        if (k.h_exp == 0) out.add(k.q_exp, k.p_exp, c);
    return out;
}

inline CPoly cpoly_from_classical(const opmech::ClassicalPolynomial& f) {
    CPoly out;
    for (const auto& [k, c] : f.terms()) out.add(k.q_exp, k.p_exp, c);
    return out;
}

}  // namespace testsupport

#endif  // OPMECH_TESTS_COMMUTATIVE_ORACLE_HPP
