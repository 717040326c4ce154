#ifndef OPMECH_NCPOLY_HPP
#define OPMECH_NCPOLY_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "opmech/rational.hpp"

namespace opmech {

/// One generator letter of a noncommutative word.
enum class Letter : std::uint8_t { Q, P };

/// Finite product of generators; the empty word is the identity.
using Word = std::vector<Letter>;

inline Word word_from_string(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case 'q': case 'Q': w.push_back(Letter::Q); break;
            case 'p': case 'P': w.push_back(Letter::P); break;
            case ' ': break;
            default: throw std::invalid_argument("word letters must be Q or P");
        }
    }
    return w;
}

/// Exponent triple of a canonical term: coefficient * hbar^h_exp * q^q_exp * p^p_exp.
/// The comparison is lexicographic on (q_exp, p_exp, h_exp), which fixes the
/// printing and serialization order.
struct TermKey {
    int q_exp = 0;
    int p_exp = 0;
    int h_exp = 0;

    friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

inline boost::multiprecision::cpp_int binomial_int(int n, int k) {
    if (k < 0 || k > n) return 0;
    boost::multiprecision::cpp_int r = 1;
    for (int j = 0; j < k; ++j) {
        r *= n - j;
        r /= j + 1;
    }
    return r;
}

inline boost::multiprecision::cpp_int factorial_int(int n) {
    boost::multiprecision::cpp_int r = 1;
    for (int j = 2; j <= n; ++j) r *= j;
    return r;
}

/// (-i)^j as a Gaussian rational.
inline GaussianRational minus_i_pow(int j) {
    switch (j & 3) {
        case 0: return GaussianRational::one();
        case 1: return {Rational(0), Rational(-1)};
        case 2: return {Rational(-1), Rational(0)};
        default: return GaussianRational::imaginary_unit();
    }
}

/// Polynomial in the generators q, p and the grading symbol hbar, kept in
/// normal-ordered canonical form: every stored term q^n p^m has all q factors
/// to the left of all p factors. The product rewrites p q = q p - i*hbar
/// exactly, so equality of polynomials is equality of term maps.
class NCPolynomial {
public:
    using TermMap = std::map<TermKey, GaussianRational>;

    NCPolynomial() = default;

    static NCPolynomial zero() { return {}; }
    static NCPolynomial identity() { return from_term({0, 0, 0}, GaussianRational::one()); }
    static NCPolynomial position() { return from_term({1, 0, 0}, GaussianRational::one()); }
    static NCPolynomial momentum() { return from_term({0, 1, 0}, GaussianRational::one()); }
    static NCPolynomial hbar() { return from_term({0, 0, 1}, GaussianRational::one()); }

    static NCPolynomial from_term(TermKey key, GaussianRational c) {
        NCPolynomial f;
        f.add_term(key, std::move(c));
        return f;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    GaussianRational coefficient(TermKey key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? GaussianRational::zero() : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.q_exp + k.p_exp);
        return d;
    }

    bool has_real_coefficients() const {
        for (const auto& [k, c] : terms_)
            if (!c.is_real()) return false;
        return true;
    }

    void add_term(TermKey key, GaussianRational c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(key, std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    NCPolynomial& operator+=(const NCPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    NCPolynomial& operator-=(const NCPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    NCPolynomial operator-() const {
        NCPolynomial r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    NCPolynomial& operator*=(const GaussianRational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
    friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
    friend NCPolynomial operator*(NCPolynomial a, const GaussianRational& s) { return a *= s; }
    friend NCPolynomial operator*(const GaussianRational& s, NCPolynomial a) { return a *= s; }
    friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) { return a.terms_ == b.terms_; }

    /// Operator product. For each term pair the inner factor p^m q^n is
    /// rewritten through
    ///   p^m q^n = sum_j j! C(m,j) C(n,j) (-i hbar)^j q^(n-j) p^(m-j),
    /// which is the closed form of iterating the single swap.
    friend NCPolynomial operator*(const NCPolynomial& f, const NCPolynomial& g) {
        NCPolynomial out;
        for (const auto& [a, ca] : f.terms_) {
            for (const auto& [b, cb] : g.terms_) {
                GaussianRational cc = ca * cb;
                int swaps = std::min(a.p_exp, b.q_exp);
                for (int j = 0; j <= swaps; ++j) {
                    Rational comb(factorial_int(j) * binomial_int(a.p_exp, j) *
                                  binomial_int(b.q_exp, j));
                    GaussianRational cj = cc * GaussianRational(comb) * minus_i_pow(j);
                    out.add_term({a.q_exp + b.q_exp - j, a.p_exp + b.p_exp - j,
                                  a.h_exp + b.h_exp + j},
                                 std::move(cj));
                }
            }
        }
        return out;
    }

    NCPolynomial& operator*=(const NCPolynomial& o) { return *this = *this * o; }

    NCPolynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative operator power");
        NCPolynomial r = identity();
        for (int j = 0; j < e; ++j) r *= *this;
        return r;
    }

    /// Formal division of the hbar grading by one. Defined only when every
    /// term carries hbar; used for the commutator-to-bracket comparison.
    NCPolynomial divide_hbar() const {
        NCPolynomial r;
        for (const auto& [k, c] : terms_) {
            if (k.h_exp == 0)
                throw std::domain_error("polynomial is not divisible by hbar");
            r.terms_.emplace(TermKey{k.q_exp, k.p_exp, k.h_exp - 1}, c);
        }
        return r;
    }

private:
    TermMap terms_;
};

/// Normal-orders the operator product of the letters of w.
inline NCPolynomial normal_order(const Word& w) {
    NCPolynomial f = NCPolynomial::identity();
    for (Letter l : w)
        f *= (l == Letter::Q) ? NCPolynomial::position() : NCPolynomial::momentum();
    return f;
}

inline NCPolynomial commutator(const NCPolynomial& f, const NCPolynomial& g) {
    return f * g - g * f;
}

/// Antilinear involution with q, p, hbar self-adjoint: conjugates the
/// coefficient and reverses each term to p^m q^n before re-ordering.
inline NCPolynomial adjoint(const NCPolynomial& f) {
    NCPolynomial out;
    for (const auto& [k, c] : f.terms()) {
        NCPolynomial reversed =
            NCPolynomial::from_term({0, k.p_exp, k.h_exp}, c.conjugate()) *
            NCPolynomial::from_term({k.q_exp, 0, 0}, GaussianRational::one());
        out += reversed;
    }
    return out;
}

}  // namespace opmech

#endif  // OPMECH_NCPOLY_HPP
