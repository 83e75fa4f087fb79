#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace hotplug {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binom(std::int64_t n, std::int64_t k);
std::uint64_t binom_u64(std::int64_t n, std::int64_t k);

Rational make_rational(const BigInt& num, const BigInt& den);
inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

BigInt numerator(const Rational& r);
BigInt denominator(const Rational& r);
double to_double(const Rational& r);
// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& r);
// Accepts "a", "a/b" and terminating decimals such as "2.00884".
Rational parse_rational(const std::string& text);

inline Rational positive_part(const Rational& r) { return r > 0 ? r : Rational(0); }

}  // namespace hotplug
