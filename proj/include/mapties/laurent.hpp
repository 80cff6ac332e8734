// Laurent polynomials in the channel likelihood ratio q, with rational
// coefficients. Prior weights are written in this form (e.g. "q^2", "1/3*q^-1",
// "2 + q^2 + q^-2") and evaluated exactly once the channel fixes q.

#pragma once

#include "mapties/rational.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace mapties {

/// Syntax error in a weight expression; `position` is a byte offset into the input.
class WeightSyntaxError : public std::invalid_argument {
  public:
    WeightSyntaxError(std::size_t position, const std::string& what)
        : std::invalid_argument("weight expression, position " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Finite sum of terms c_e * q^e with nonzero rational coefficients.
/// Exponents may be negative; no zero coefficient is ever stored.
class LaurentWeight {
  public:
    LaurentWeight() = default;

    static LaurentWeight constant(const Rational& c) { return monomial(0, c); }

    static LaurentWeight monomial(long exponent, const Rational& coeff) {
        LaurentWeight w;
        w.add_term(exponent, coeff);
        return w;
    }

    void add_term(long exponent, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(exponent, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<long, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// The exponent when the weight is exactly q^e (single term, coefficient 1).
    std::optional<long> unit_exponent() const {
        if (terms_.size() == 1 && terms_.begin()->second == 1) return terms_.begin()->first;
        return std::nullopt;
    }

    /// Exact value of sum c_e * q^e; requires q > 0.
    Rational evaluate(const Rational& q) const {
        if (q <= 0) throw std::domain_error("LaurentWeight::evaluate requires q > 0");
        Rational total(0);
        for (const auto& [e, c] : terms_) total += c * rational_pow(q, e);
        return total;
    }

    LaurentWeight operator+(const LaurentWeight& rhs) const {
        LaurentWeight out = *this;
        for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
        return out;
    }

    LaurentWeight operator*(const LaurentWeight& rhs) const {
        LaurentWeight out;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : rhs.terms_) out.add_term(ea + eb, ca * cb);
        return out;
    }

    bool operator==(const LaurentWeight& rhs) const { return terms_ == rhs.terms_; }

    /// Canonical rendering, highest exponent first; re-parses to the same term map.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            const bool negative = c < 0;
            const Rational mag = negative ? Rational(-c) : c;
            if (first) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            first = false;
            if (e == 0) {
                out += mapties::to_string(mag);
            } else {
                if (mag != 1) {
                    out += mapties::to_string(mag);
                    out += "*";
                }
                out += "q";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

  private:
    std::map<long, Rational> terms_;
};

namespace detail {

// Recursive-descent parser for the weight grammar:
//   expr     := sign? term ((+|-) term)*
//   term     := rational ('*'? 'q' ('^' sint)?)? | 'q' ('^' sint)?
//   rational := int ('/' posint)?
// Whitespace is ignored everywhere.
class WeightParser {
  public:
    explicit WeightParser(std::string_view text) : text_(text) {}

    LaurentWeight parse() {
        LaurentWeight out;
        skip_ws();
        if (at_end()) throw WeightSyntaxError(pos_, "empty expression");
        int sign = consume_sign().value_or(+1);
        parse_term(out, sign);
        skip_ws();
        while (!at_end()) {
            auto s = consume_sign();
            if (!s) throw WeightSyntaxError(pos_, "expected '+' or '-' between terms");
            parse_term(out, *s);
            skip_ws();
        }
        return out;
    }

  private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    std::optional<int> consume_sign() {
        skip_ws();
        if (at_end()) return std::nullopt;
        if (peek() == '+') { ++pos_; return +1; }
        if (peek() == '-') { ++pos_; return -1; }
        return std::nullopt;
    }

    BigInt parse_digits(const char* what) {
        skip_ws();
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) throw WeightSyntaxError(start, std::string("expected ") + what);
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    long parse_signed_integer() {
        int sign = consume_sign().value_or(+1);
        BigInt digits = parse_digits("integer exponent");
        if (digits > 1000000) throw WeightSyntaxError(pos_, "exponent out of range");
        return sign * digits.convert_to<long>();
    }

    // Exponent of the 'q' factor, or 0 if there is no 'q' at the cursor.
    long parse_q_factor() {
        skip_ws();
        if (at_end() || peek() != 'q') return 0;
        ++pos_;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            return parse_signed_integer();
        }
        return 1;
    }

    void parse_term(LaurentWeight& out, int sign) {
        skip_ws();
        if (at_end()) throw WeightSyntaxError(pos_, "expected a term");
        Rational coeff(1);
        long exponent = 0;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            BigInt num = parse_digits("number");
            BigInt den = 1;
            skip_ws();
            if (!at_end() && peek() == '/') {
                ++pos_;
                den = parse_digits("positive denominator");
                if (den == 0) throw WeightSyntaxError(pos_, "denominator must be positive");
            }
            coeff = Rational(num, den);
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_ws();
                if (at_end() || peek() != 'q') throw WeightSyntaxError(pos_, "expected 'q' after '*'");
            }
            exponent = parse_q_factor();
        } else if (peek() == 'q') {
            exponent = parse_q_factor();
        } else {
            throw WeightSyntaxError(pos_, "expected a number or 'q'");
        }
        out.add_term(exponent, sign < 0 ? Rational(-coeff) : coeff);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a weight expression; throws WeightSyntaxError with the offending position.
inline LaurentWeight parse_weight(std::string_view text) {
    return detail::WeightParser(text).parse();
}

}  // namespace mapties
