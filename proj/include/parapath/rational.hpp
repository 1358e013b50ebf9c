// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace parapath {

// Exact arbitrary-precision arithmetic. Rational is always stored reduced
// with a positive denominator (canonical zero is 0/1); every operation
// re-normalizes, so structural equality is value equality.
using Integer = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::backends::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer floor_rat(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

inline Integer ceil_rat(const Rational& x) { return -floor_rat(-x); }

inline int sign(const Rational& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

/// Canonical text form: "p/q" reduced, "p" when the denominator is 1.
inline std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Parses "p" or "p/q" with optional leading '-'. Returns nullopt on any
/// other shape (including '+', whitespace, or a zero denominator).
inline std::optional<Rational> parse_rational(const std::string& text) {
    auto slash = text.find('/');
    auto is_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!is_int(text)) return std::nullopt;
        return Rational(Integer(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-') return std::nullopt;
    Integer d(den);
    if (d == 0) return std::nullopt;
    return Rational(Integer(num), d);
}

}  // namespace parapath
