// Dual-mode arithmetic. Probability-level quantities are computed either in
// exact rational arithmetic (default) or in double precision (opt-in). The
// scalar_traits specializations concentrate every mode-dependent decision:
// parsing, tolerances, and the |lambda| vs 1 band used by classification.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

#include "kontext/errors.hpp"

namespace kontext {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

/// cpp_int's string constructor honors C-style 0/0x prefixes; decimal digit
/// strings must have leading zeros stripped first.
inline BigInt bigint_from_decimal(std::string_view digits) {
    bool negative = false;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (digits.empty()) throw model_error("empty integer literal");
    for (char c : digits)
        if (c < '0' || c > '9') throw model_error("bad digit in integer literal");
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    BigInt value{std::string(digits)};
    return negative ? -value : value;
}

}  // namespace detail

/// Parses "p/q" fractions and decimal literals ("0.04", "-3", "+1.5e-2").
/// The decimal form is read digit-exactly, never through a double.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw model_error("not a valid number: '" + std::string(text) + "'"); };

    // trim
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (num.empty() || den.empty() || den.find('/') != std::string_view::npos) fail();
        BigInt n, d;
        try {
            n = detail::bigint_from_decimal(num);
            d = detail::bigint_from_decimal(den);
        } catch (const model_error&) {
            fail();
        }
        if (d <= 0) throw model_error("denominator must be positive in '" + std::string(text) + "'");
        return Rational(n, d);
    }

    // decimal with optional exponent
    bool negative = false;
    std::string_view s = text;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    long frac_len = 0;
    long exponent = 0;
    bool seen_dot = false, seen_digit = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_len;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            std::string_view exp = s.substr(i + 1);
            bool exp_negative = false;
            if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
                exp_negative = exp.front() == '-';
                exp.remove_prefix(1);
            }
            if (exp.empty() || exp.size() > 6) fail();
            for (char ec : exp) {
                if (ec < '0' || ec > '9') fail();
                exponent = exponent * 10 + (ec - '0');
            }
            if (exp_negative) exponent = -exponent;
            i = s.size();
            break;
        } else {
            fail();
        }
    }
    if (!seen_digit) fail();

    BigInt mantissa = detail::bigint_from_decimal(digits);
    if (negative) mantissa = -mantissa;
    long shift = exponent - frac_len;
    if (shift >= 0) return Rational(mantissa * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift)), 1);
    return Rational(mantissa, boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift)));
}

inline std::string to_fraction_string(const Rational& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* mode_name = "exact";

    static Rational parse(std::string_view text) { return parse_rational(text); }
    static double to_double(const Rational& v) { return v.template convert_to<double>(); }
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& v) { return v == 0; }
    static bool sums_to_one(const Rational& total) { return total == 1; }
    static bool equal(const Rational& a, const Rational& b) { return a == b; }

    /// -1 / 0 / +1 for lambda below, on, or above the unit circle.
    /// Takes lambda squared so the comparison stays exact.
    static int unit_band(const Rational& lambda_sq) {
        if (lambda_sq < 1) return -1;
        if (lambda_sq > 1) return 1;
        return 0;
    }

    static std::string str(const Rational& v) { return to_fraction_string(v); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode_name = "float";

    // tolerance for identities that are exact in rational arithmetic
    static constexpr double identity_tol = 1e-12;
    // tolerance for the |lambda| = 1 classification boundary
    static constexpr double boundary_tol = 1e-9;

    static double parse(std::string_view text) { return parse_rational(text).convert_to<double>(); }
    static double to_double(double v) { return v; }
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double v) { return v == 0.0; }
    static bool sums_to_one(double total) { return std::abs(total - 1.0) <= identity_tol; }
    static bool equal(double a, double b) { return std::abs(a - b) <= identity_tol; }

    static int unit_band(double lambda_sq) {
        double mag = std::sqrt(lambda_sq);
        if (std::abs(mag - 1.0) <= boundary_tol) return 0;
        return mag < 1.0 ? -1 : 1;
    }

    static std::string str(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }
};

}  // namespace kontext
