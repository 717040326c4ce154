#ifndef OPMECH_CLASSICAL_HPP
#define OPMECH_CLASSICAL_HPP

#include <map>
#include <stdexcept>

#include "opmech/ncpoly.hpp"

namespace opmech {

struct ClassicalKey {
    int q_exp = 0;
    int p_exp = 0;

    friend auto operator<=>(const ClassicalKey&, const ClassicalKey&) = default;
};

/// Polynomial in commuting phase-space variables q, p; the image of the
/// operator algebra at hbar = 0.
class ClassicalPolynomial {
public:
    using TermMap = std::map<ClassicalKey, GaussianRational>;

    ClassicalPolynomial() = default;

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRational coefficient(ClassicalKey key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? GaussianRational::zero() : it->second;
    }

    void add_term(ClassicalKey key, GaussianRational c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(key, std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const ClassicalPolynomial& a, const ClassicalPolynomial& b) {
        return a.terms_ == b.terms_;
    }

private:
    TermMap terms_;
};

/// Substitutes hbar = 0: keeps exactly the grade-zero terms, reinterpreting
/// (n,m) as the commuting monomial q^n p^m.
inline ClassicalPolynomial classical_limit(const NCPolynomial& f) {
    ClassicalPolynomial out;
    for (const auto& [k, c] : f.terms())
        if (k.h_exp == 0) out.add_term({k.q_exp, k.p_exp}, c);
    return out;
}

namespace detail {

/// Power by repeated multiplication, left fold. The representation layer
/// uses the same association for diagonal matrix powers, so the classical
/// evaluation identity holds bitwise.
inline double pow_fold(double x, int e) {
    double r = 1.0;
    for (int j = 0; j < e; ++j) r *= x;
    return r;
}

}  // namespace detail

/// Numerical evaluation at a phase-space point. Requires real coefficients.
/// The association (c * q^n) * p^m mirrors the operator-evaluation path, so
/// diagonal matrix elements of classically evaluated observables agree with
/// this function bitwise.
inline double eval_classical(const ClassicalPolynomial& f, double q0, double p0) {
    double acc = 0.0;
    for (const auto& [k, c] : f.terms()) {
        if (!c.is_real())
            throw std::domain_error("eval_classical: polynomial has non-real coefficients");
        acc += (static_cast<double>(c.re) * detail::pow_fold(q0, k.q_exp)) *
               detail::pow_fold(p0, k.p_exp);
    }
    return acc;
}

}  // namespace opmech

#endif  // OPMECH_CLASSICAL_HPP
