#ifndef KNAPGAP_RATIONAL_HPP
#define KNAPGAP_RATIONAL_HPP

/**
 * Exact arbitrary-precision rational arithmetic used throughout the library.
 *
 * Every LP value, objective and solution coordinate is a Rational; nothing in
 * this project ever rounds through floating point.  Rationals are backed by
 * GMP via boost::multiprecision and are kept canonical (lowest terms,
 * positive denominator) by the backend.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "knapgap/errors.hpp"

namespace knapgap {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

/** Largest integer <= q. */
inline Int floor_int(const Rational& q) {
    Int t = numerator(q) / denominator(q);  // truncates toward zero
    if (numerator(q) < 0 && !is_integral(q)) --t;
    return t;
}

/** Smallest integer >= q. */
inline Int ceil_int(const Rational& q) {
    Int t = numerator(q) / denominator(q);
    if (numerator(q) > 0 && !is_integral(q)) ++t;
    return t;
}

inline Rational floor_rat(const Rational& q) { return Rational(floor_int(q)); }
inline Rational ceil_rat(const Rational& q) { return Rational(ceil_int(q)); }

/** Number of non-integral coordinates, decided exactly. */
inline std::size_t count_fractional(const RationalVector& x) {
    std::size_t count = 0;
    for (const Rational& v : x)
        if (!is_integral(v)) ++count;
    return count;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw ContractViolation("dot: dimension mismatch");
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) sum += a[i] * b[i];
    return sum;
}

/** Renders "p" when q is integral and "p/q" otherwise. */
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/** Parses "p" or "p/q"; returns nullopt on malformed input or q <= 0. */
inline std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash == std::string::npos ? text.size() : slash);
    const std::string den_part = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto valid_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!valid_int(num_part) || !valid_int(den_part)) return std::nullopt;
    Int num(num_part), den(den_part);
    if (den <= 0) return std::nullopt;
    return Rational(num, den);
}

}  // namespace knapgap

#endif  // KNAPGAP_RATIONAL_HPP
