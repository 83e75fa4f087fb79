#include "hotplug/rational.hpp"

#include "hotplug/errors.hpp"

namespace hotplug {

BigInt binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t binom_u64(std::int64_t n, std::int64_t k) {
  BigInt b = binom(n, k);
  if (b > std::numeric_limits<std::uint64_t>::max()) fail(Errc::guard_rail, "binomial overflows 64 bits");
  return b.convert_to<std::uint64_t>();
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(Errc::division_by_zero, "rational with zero denominator");
  return Rational(num, den);
}

BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  BigInt d = denominator(r);
  if (d == 1) return numerator(r).str();
  return numerator(r).str() + "/" + d.str();
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { fail(Errc::config, "not a rational: '" + text + "'"); };
  if (text.empty()) bad();
  try {
    if (auto slash = text.find('/'); slash != std::string::npos)
      return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(text.size() - dot - 1));
      return make_rational(BigInt(digits), scale);
    }
    return Rational(BigInt(text));
  } catch (const std::runtime_error&) {
    bad();
  }
  return 0;
}

}  // namespace hotplug
