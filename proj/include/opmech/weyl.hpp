#ifndef OPMECH_WEYL_HPP
#define OPMECH_WEYL_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "opmech/ncpoly.hpp"

namespace opmech {

/// Thrown by the enumeration path of the Weyl monomial when the number of
/// interleavings is too large; callers should use the recursive path.
struct EnumerationCapExceeded : std::domain_error {
    explicit EnumerationCapExceeded(int n, int m)
        : std::domain_error("weyl_monomial_enumerated: n+m = " + std::to_string(n + m) +
                            " exceeds the enumeration cap; use the recursive path") {}
};

namespace detail {

/// Table of W(i,j) for all i <= nmax, j <= mmax, built from the degree
/// recursion (n+m) W(n,m) = n q W(n-1,m) + m p W(n,m-1). The table is local
/// to each call, so the functions stay pure.
inline std::vector<std::vector<NCPolynomial>> weyl_table(int nmax, int mmax) {
    std::vector<std::vector<NCPolynomial>> w(nmax + 1,
                                             std::vector<NCPolynomial>(mmax + 1));
    for (int i = 0; i <= nmax; ++i) {
        for (int j = 0; j <= mmax; ++j) {
            if (i == 0 || j == 0) {
                w[i][j] = NCPolynomial::from_term({i, j, 0}, GaussianRational::one());
                continue;
            }
            NCPolynomial s = NCPolynomial::position() * w[i - 1][j] * GaussianRational(Rational(i));
            s += NCPolynomial::momentum() * w[i][j - 1] * GaussianRational(Rational(j));
            s *= GaussianRational(Rational(1, i + j));
            w[i][j] = std::move(s);
        }
    }
    return w;
}

}  // namespace detail

/// Symmetrized monomial W(n,m): the average of all distinct interleavings of
/// n position and m momentum factors, in normal-ordered form. Recursive
/// construction; no cap.
inline NCPolynomial weyl_monomial(int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("weyl_monomial: negative exponent");
    return detail::weyl_table(n, m)[n][m];
}

/// Reference path: literal enumeration of the C(n+m,n) interleavings, each
/// normal-ordered, then averaged. Must agree exactly with weyl_monomial.
inline NCPolynomial weyl_monomial_enumerated(int n, int m, int cap = 12) {
    if (n < 0 || m < 0) throw std::invalid_argument("weyl_monomial_enumerated: negative exponent");
    if (n + m > cap) throw EnumerationCapExceeded(n, m);
    Word w(static_cast<std::size_t>(n), Letter::Q);
    w.insert(w.end(), static_cast<std::size_t>(m), Letter::P);
    NCPolynomial sum;
    Rational count = 0;
    do {
        sum += normal_order(w);
        ++count;
    } while (std::next_permutation(w.begin(), w.end()));
    sum *= GaussianRational(Rational(1) / count);
    return sum;
}

/// Element of the same algebra written in the Weyl basis: a term (n,m,k)
/// denotes coefficient * hbar^k * W(n,m). Under the symmetrized product the
/// basis behaves like commuting variables, which is what makes the bracket
/// identities below exact.
class WeylPolynomial {
public:
    using TermMap = std::map<TermKey, GaussianRational>;

    WeylPolynomial() = default;

    static WeylPolynomial zero() { return {}; }
    static WeylPolynomial unit() { return from_term({0, 0, 0}, GaussianRational::one()); }
    static WeylPolynomial from_term(TermKey key, GaussianRational c) {
        WeylPolynomial w;
        w.add_term(key, std::move(c));
        return w;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRational coefficient(TermKey key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? GaussianRational::zero() : it->second;
    }

    void add_term(TermKey key, GaussianRational c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(key, std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WeylPolynomial& operator+=(const WeylPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    WeylPolynomial& operator-=(const WeylPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    WeylPolynomial operator-() const {
        WeylPolynomial r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    WeylPolynomial& operator*=(const GaussianRational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    friend WeylPolynomial operator+(WeylPolynomial a, const WeylPolynomial& b) { return a += b; }
    friend WeylPolynomial operator-(WeylPolynomial a, const WeylPolynomial& b) { return a -= b; }
    friend WeylPolynomial operator*(WeylPolynomial a, const GaussianRational& s) { return a *= s; }
    friend WeylPolynomial operator*(const GaussianRational& s, WeylPolynomial a) { return a *= s; }
    friend bool operator==(const WeylPolynomial& a, const WeylPolynomial& b) {
        return a.terms_ == b.terms_;
    }

private:
    TermMap terms_;
};

/// The symmetrized product: W(a,b) o W(c,d) = W(a+c,b+d), hbar exponents add.
/// Commutative and associative with unit W(0,0).
inline WeylPolynomial symmetrized_product(const WeylPolynomial& a, const WeylPolynomial& b) {
    WeylPolynomial out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            out.add_term({ka.q_exp + kb.q_exp, ka.p_exp + kb.p_exp, ka.h_exp + kb.h_exp},
                         ca * cb);
    return out;
}

inline WeylPolynomial symmetrized_pow(const WeylPolynomial& a, int e) {
    if (e < 0) throw std::invalid_argument("negative symmetrized power");
    WeylPolynomial r = WeylPolynomial::unit();
    for (int j = 0; j < e; ++j) r = symmetrized_product(r, a);
    return r;
}

/// Formal partial with respect to the position generator:
/// dW(n,m) = n W(n-1,m).
inline WeylPolynomial partial_q(const WeylPolynomial& w) {
    WeylPolynomial out;
    for (const auto& [k, c] : w.terms())
        if (k.q_exp > 0)
            out.add_term({k.q_exp - 1, k.p_exp, k.h_exp}, c * GaussianRational(Rational(k.q_exp)));
    return out;
}

/// Formal partial with respect to the momentum generator:
/// dW(n,m) = m W(n,m-1).
inline WeylPolynomial partial_p(const WeylPolynomial& w) {
    WeylPolynomial out;
    for (const auto& [k, c] : w.terms())
        if (k.p_exp > 0)
            out.add_term({k.q_exp, k.p_exp - 1, k.h_exp}, c * GaussianRational(Rational(k.p_exp)));
    return out;
}

/// The symmetrized Poisson bracket
///   {f,g}_S = df/dq o dg/dp - dg/dq o df/dp,
/// the common Lie bracket candidate for both mechanics.
inline WeylPolynomial symmetrized_poisson(const WeylPolynomial& f, const WeylPolynomial& g) {
    return symmetrized_product(partial_q(f), partial_p(g)) -
           symmetrized_product(partial_q(g), partial_p(f));
}

/// Linear extension of W(n,m) back to normal-ordered form.
inline NCPolynomial from_weyl_basis(const WeylPolynomial& w) {
    int nmax = 0, mmax = 0;
    for (const auto& [k, c] : w.terms()) {
        nmax = std::max(nmax, k.q_exp);
        mmax = std::max(mmax, k.p_exp);
    }
    auto table = detail::weyl_table(nmax, mmax);
    NCPolynomial out;
    for (const auto& [k, c] : w.terms()) {
        NCPolynomial piece = table[k.q_exp][k.p_exp] * c;
        if (k.h_exp > 0) piece *= NCPolynomial::from_term({0, 0, k.h_exp}, GaussianRational::one());
        out += piece;
    }
    return out;
}

/// Exact change of basis into Weyl monomials. Triangular in total degree:
/// the leading term of W(n,m) is q^n p^m with unit coefficient, so peeling
/// from the top degree terminates.
inline WeylPolynomial to_weyl_basis(const NCPolynomial& f) {
    int nmax = 0, mmax = 0;
    for (const auto& [k, c] : f.terms()) {
        nmax = std::max(nmax, k.q_exp);
        mmax = std::max(mmax, k.p_exp);
    }
    auto table = detail::weyl_table(nmax, mmax);

    NCPolynomial rem = f;
    WeylPolynomial out;
    while (!rem.is_zero()) {
        auto best = rem.terms().begin();
        int best_deg = best->first.q_exp + best->first.p_exp;
        for (auto it = rem.terms().begin(); it != rem.terms().end(); ++it) {
            int deg = it->first.q_exp + it->first.p_exp;
            if (deg > best_deg) {
                best = it;
                best_deg = deg;
            }
        }
        TermKey key = best->first;
        GaussianRational c = best->second;
        out.add_term(key, c);
        NCPolynomial piece = table[key.q_exp][key.p_exp] * c;
        if (key.h_exp > 0)
            piece *= NCPolynomial::from_term({0, 0, key.h_exp}, GaussianRational::one());
        rem -= piece;
    }
    return out;
}

}  // namespace opmech

#endif  // OPMECH_WEYL_HPP
