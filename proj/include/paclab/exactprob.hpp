#pragma once

// Exact Bernoulli/binomial probabilities over arbitrary-precision rationals.
//
// Every probability in the library is an ExactProbability. Doubles appear
// only when a value is rendered for humans (to_double, to_decimal).

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "paclab/errors.hpp"

namespace paclab {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "3/10", "0.12", "7" or "-1/2" into an exact rational.
// Decimal strings are converted digit by digit, so "0.1" is exactly 1/10.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  auto bad = [&]() { return domain_error("not a rational number: '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto all_digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den)) throw bad();
    BigInt d(std::string(den), 10);
    if (d == 0) throw domain_error("zero denominator in '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(num), 10), d);
  } else {
    auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    if (!whole.empty() && !all_digits(whole)) throw bad();
    if (dot != std::string_view::npos && !frac.empty() && !all_digits(frac)) throw bad();
    std::string digits = std::string(whole) + std::string(frac);
    if (digits.empty()) throw bad();
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(BigInt(digits, 10), scale);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

inline Rational power(const Rational& base, unsigned long exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// C(n, k) by the multiplicative formula; every intermediate quotient is exact.
inline BigInt binomial_coefficient(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    mpz_mul_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n - k + i));
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return c;
}

// Rounds |value| to `decimals` digits after the point (half away from zero)
// and returns the digits as a string, e.g. (77/100, 1) -> "0.8".
inline std::string to_fixed(const Rational& value, unsigned decimals) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, decimals);
  BigInt num = abs(value.get_num()) * scale * 2 + value.get_den();
  BigInt den = value.get_den() * 2;
  BigInt scaled = num / den;
  std::string digits = scaled.get_str();
  if (digits.size() <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
  std::string out = value < 0 && scaled != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - decimals);
  if (decimals > 0) out += "." + digits.substr(digits.size() - decimals);
  return out;
}

// Rounds to `significant` digits. Plain notation down to 1e-5, scientific below.
inline std::string to_decimal(const Rational& value, unsigned significant = 6) {
  if (significant == 0) significant = 1;
  if (value == 0) return "0";
  Rational mag = abs(value);
  // Find e with 10^e <= mag < 10^(e+1).
  long e = 0;
  {
    BigInt q = mag.get_num() / mag.get_den();
    if (q > 0) {
      e = static_cast<long>(q.get_str().size()) - 1;
    } else {
      BigInt inv = mag.get_den() / mag.get_num();
      e = -static_cast<long>(inv.get_str().size());
      Rational p10 = power(Rational(1, 10), static_cast<unsigned long>(-e));
      if (mag >= p10 * 10) ++e;
    }
  }
  // Round mag * 10^(significant-1-e) to an integer, half away from zero.
  long shift = static_cast<long>(significant) - 1 - e;
  Rational scaled = shift >= 0 ? Rational(mag * power(Rational(10), static_cast<unsigned long>(shift)))
                               : Rational(mag / power(Rational(10), static_cast<unsigned long>(-shift)));
  BigInt rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string digits = rounded.get_str();
  if (digits.size() > significant) {  // rounded up to the next power of ten
    ++e;
    digits.pop_back();
  }
  std::string sign = value < 0 ? "-" : "";
  if (e < -5 || e >= static_cast<long>(significant)) {
    std::string mant = digits.substr(0, 1);
    if (digits.size() > 1) mant += "." + digits.substr(1);
    return sign + mant + "e" + (e < 0 ? "-" : "+") + std::to_string(e < 0 ? -e : e);
  }
  if (e < 0) return sign + "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
  std::size_t int_len = static_cast<std::size_t>(e) + 1;
  if (digits.size() <= int_len) return sign + digits + std::string(int_len - digits.size(), '0');
  return sign + digits.substr(0, int_len) + "." + digits.substr(int_len);
}

// Exact decimal when the denominator is 2^a 5^b ("0.05", "91.3"), otherwise to_decimal.
inline std::string to_plain(const Rational& value) {
  BigInt den = value.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return to_decimal(value);
  return to_fixed(value, std::max(twos, fives));
}

// A probability held as a reduced fraction in [0, 1].
class ExactProbability {
 public:
  ExactProbability() = default;

  explicit ExactProbability(Rational value) : value_(std::move(value)) {
    value_.canonicalize();
    if (value_ < 0 || value_ > 1)
      throw domain_error("probability outside [0,1]: " + value_.get_str());
  }

  ExactProbability(long num, long den) : ExactProbability(Rational(num, den)) {}

  static ExactProbability parse(std::string_view text) { return ExactProbability(parse_rational(text)); }

  const Rational& value() const noexcept { return value_; }
  const BigInt& numerator() const noexcept { return value_.get_num(); }
  const BigInt& denominator() const noexcept { return value_.get_den(); }

  double to_double() const { return value_.get_d(); }
  std::string str() const { return value_.get_str(); }
  std::string decimal(unsigned significant = 6) const { return to_decimal(value_, significant); }

  ExactProbability complement() const { return ExactProbability(Rational(1 - value_)); }

  friend bool operator==(const ExactProbability& a, const ExactProbability& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactProbability& a, const ExactProbability& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactProbability& p) { return os << p.str(); }

 private:
  Rational value_{0};
};

namespace detail {

inline void check_flip_probability(const Rational& q) {
  if (q < 0 || q > 1) throw domain_error("flip probability outside [0,1]: " + q.get_str());
}

// With q = a/b, P(K = i) = C(m,i) a^i (b-a)^(m-i) / b^m. Returns the numerator.
inline BigInt binomial_term_numerator(std::uint64_t i, std::uint64_t m, const Rational& q) {
  BigInt a_pow, rest_pow;
  BigInt rest = q.get_den() - q.get_num();
  mpz_pow_ui(a_pow.get_mpz_t(), q.get_num_mpz_t(), i);
  mpz_pow_ui(rest_pow.get_mpz_t(), rest.get_mpz_t(), m - i);
  return binomial_coefficient(m, i) * a_pow * rest_pow;
}

inline BigInt binomial_denominator(std::uint64_t m, const Rational& q) {
  BigInt d;
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), m);
  return d;
}

}  // namespace detail

// P(K = k) for K ~ Binomial(m, q).
inline ExactProbability bernoulli_pmf(std::uint64_t k, std::uint64_t m, const Rational& q) {
  if (k > m) throw domain_error("bernoulli_pmf: k > m");
  detail::check_flip_probability(q);
  return ExactProbability(Rational(detail::binomial_term_numerator(k, m, q), detail::binomial_denominator(m, q)));
}

// P(K <= t) for K ~ Binomial(m, q).
inline ExactProbability binomial_tail_le(std::uint64_t m, const Rational& q, std::uint64_t t) {
  if (t > m) throw domain_error("binomial_tail_le: t > m");
  detail::check_flip_probability(q);
  BigInt sum = 0;
  for (std::uint64_t i = 0; i <= t; ++i) sum += detail::binomial_term_numerator(i, m, q);
  return ExactProbability(Rational(sum, detail::binomial_denominator(m, q)));
}

}  // namespace paclab
