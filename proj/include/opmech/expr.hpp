#ifndef OPMECH_EXPR_HPP
#define OPMECH_EXPR_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "opmech/ncpoly.hpp"
#include "opmech/weyl.hpp"

namespace opmech {

/// Canonical text form: terms in lexicographic (n,m,k) order, each rendered
/// as coefficient*hbar^k*q^n*p^m. The output re-parses to the same
/// polynomial.
inline std::string to_text(const NCPolynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : f.terms()) {
        std::string factors;
        auto append_factor = [&factors](const char* sym, int e) {
            if (e == 0) return;
            if (!factors.empty()) factors += '*';
            factors += sym;
            if (e > 1) factors += '^' + std::to_string(e);
        };
        append_factor("hbar", k.h_exp);
        append_factor("q", k.q_exp);
        append_factor("p", k.p_exp);

        std::string piece;
        if (factors.empty()) {
            piece = to_string(c);
        } else if (c == GaussianRational::one()) {
            piece = factors;
        } else if (c == -GaussianRational::one()) {
            piece = "-" + factors;
        } else {
            piece = to_string(c) + "*" + factors;
        }

        if (out.empty()) {
            out = piece;
        } else if (!piece.empty() && piece.front() == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

/// Weyl-basis rendering with explicit W(n,m) monomials.
inline std::string to_text(const WeylPolynomial& w) {
    if (w.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : w.terms()) {
        std::string factors;
        if (k.h_exp > 0) {
            factors = "hbar";
            if (k.h_exp > 1) factors += '^' + std::to_string(k.h_exp);
            factors += '*';
        }
        factors += "W(" + std::to_string(k.q_exp) + "," + std::to_string(k.p_exp) + ")";

        std::string piece;
        if (c == GaussianRational::one()) {
            piece = factors;
        } else if (c == -GaussianRational::one()) {
            piece = "-" + factors;
        } else {
            piece = to_string(c) + "*" + factors;
        }

        if (out.empty()) {
            out = piece;
        } else if (piece.front() == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

namespace detail {

/// Recursive-descent parser for the plain-text syntax:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'@') factor)*
///   factor := '-'* primary ('^' INT)*
///   primary:= 'q' | 'p' | 'hbar' | 'i' | INT('/'INT)? | '(' expr ')'
/// '*' is the operator product; '@' is the symmetrized product, applied via
/// the exact Weyl-basis round trip. Whitespace is ignored.
class ExprParser {
public:
    explicit ExprParser(std::string src) : src_(std::move(src)) {}

    NCPolynomial parse() {
        NCPolynomial f = parse_expr();
        skip_space();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    std::string src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression error at position " + std::to_string(pos_) +
                                    ": " + what);
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char ch) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NCPolynomial parse_expr() {
        NCPolynomial acc = parse_term();
        while (true) {
            if (consume('+'))
                acc += parse_term();
            else if (consume('-'))
                acc -= parse_term();
            else
                return acc;
        }
    }

    NCPolynomial parse_term() {
        NCPolynomial acc = parse_factor();
        while (true) {
            if (consume('*')) {
                acc *= parse_factor();
            } else if (consume('@')) {
                NCPolynomial rhs = parse_factor();
                acc = from_weyl_basis(
                    symmetrized_product(to_weyl_basis(acc), to_weyl_basis(rhs)));
            } else {
                return acc;
            }
        }
    }

    NCPolynomial parse_factor() {
        bool neg = false;
        while (true) {
            if (consume('-'))
                neg = !neg;
            else if (consume('+'))
                ;
            else
                break;
        }
        NCPolynomial f = parse_primary();
        while (consume('^')) f = f.pow(parse_uint());
        if (neg) f = -f;
        return f;
    }

    NCPolynomial parse_primary() {
        skip_space();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char ch = src_[pos_];
        if (ch == '(') {
            ++pos_;
            NCPolynomial f = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            Rational num(parse_digits());
            if (consume('/')) {
                Rational den(parse_digits());
                if (den == 0) fail("zero denominator");
                num /= den;
            }
            return NCPolynomial::from_term({0, 0, 0}, GaussianRational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::string name;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
                name += src_[pos_++];
            if (name == "q") return NCPolynomial::position();
            if (name == "p") return NCPolynomial::momentum();
            if (name == "hbar") return NCPolynomial::hbar();
            if (name == "i")
                return NCPolynomial::from_term({0, 0, 0}, GaussianRational::imaginary_unit());
            fail("unknown symbol '" + name + "'");
        }
        fail(std::string("unexpected character '") + ch + "'");
    }

    std::string parse_digits() {
        skip_space();
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            digits += src_[pos_++];
        if (digits.empty()) fail("expected a number");
        return digits;
    }

    int parse_uint() {
        std::string digits = parse_digits();
        if (digits.size() > 3) fail("exponent too large");
        return std::stoi(digits);
    }
};

}  // namespace detail

inline NCPolynomial parse_expression(const std::string& text) {
    return detail::ExprParser(text).parse();
}

}  // namespace opmech

#endif  // OPMECH_EXPR_HPP
