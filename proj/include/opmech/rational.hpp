#ifndef OPMECH_RATIONAL_HPP
#define OPMECH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <ostream>
#include <sstream>
#include <string>

namespace opmech {

/// Exact rational scalar. Arbitrary precision, always stored in lowest terms
/// with positive denominator (the backend normalizes on every operation).
using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational a + b*i. The coefficient field of the symbolic layer:
/// closed under the hbar rewrites that introduce factors of i, with no
/// rounding anywhere.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(long long r) : re(r) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {1}; }
    static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conjugate() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    /// Division by a nonzero rational (the only division the algebra needs;
    /// it arises from the combinatorial averages).
    GaussianRational& operator/=(const Rational& d) {
        re /= d;
        im /= d;
        return *this;
    }
    friend GaussianRational operator/(GaussianRational a, const Rational& d) { return a /= d; }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

/// Renders `n`, `n/d`, `i`, `-3/2*i`, or `(a+b*i)`; re-parseable by the
/// expression grammar.
inline std::string to_string(const GaussianRational& c) {
    auto rat = [](const Rational& r) {
        std::ostringstream os;
        os << r;
        return os.str();
    };
    auto imag_part = [&](const Rational& r) -> std::string {
        if (r == 1) return "i";
        if (r == -1) return "-i";
        return rat(r) + "*i";
    };
    if (c.im == 0) return rat(c.re);
    if (c.re == 0) return imag_part(c.im);
    std::string s = "(" + rat(c.re);
    s += c.im > 0 ? "+" : "-";
    Rational a = c.im > 0 ? c.im : Rational(-c.im);
    if (a == 1)
        s += "i";
    else
        s += rat(a) + "*i";
    return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& c) {
    return os << to_string(c);
}

}  // namespace opmech

#endif  // OPMECH_RATIONAL_HPP
