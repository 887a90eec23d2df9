#pragma once

// Counter-based random streams: trial i of a run seeded with `master` always
// draws from stream_seed(master, i), whatever thread executes it.

#include <cstdint>
#include <limits>

#include "paclab/exactprob.hpp"

namespace paclab {

// SplitMix64 (Steele, Lea, Flood). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix(z);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64::mix(SplitMix64::mix(master + 0x632be59bd9b4e019ULL) ^ (index * 0x9e3779b97f4a7c15ULL + 1));
}

// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
template <class Gen>
std::uint64_t uniform_below(Gen& gen, std::uint64_t bound) {
  if (bound == 0) throw domain_error("uniform_below: empty range");
  __extension__ typedef unsigned __int128 u128;
  u128 product = static_cast<u128>(gen()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    std::uint64_t reject_below = (0 - bound) % bound;
    while (low < reject_below) {
      product = static_cast<u128>(gen()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

// An event of exact probability p, realized from one 64-bit draw u as u < floor(p * 2^64).
// The realized probability differs from p by less than 2^-64.
class BernoulliThreshold {
 public:
  BernoulliThreshold() = default;

  explicit BernoulliThreshold(const Rational& p) {
    if (p < 0 || p > 1) throw domain_error("probability outside [0,1]: " + p.get_str());
    if (p == 1) {
      always_ = true;
      return;
    }
    BigInt scaled = p.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
    scaled /= p.get_den();
    cut_ = static_cast<std::uint64_t>(mpz_get_ui(scaled.get_mpz_t()));
  }

  bool test(std::uint64_t u) const noexcept { return always_ || u < cut_; }

  template <class Gen>
  bool operator()(Gen& gen) const {
    return test(gen());
  }

 private:
  std::uint64_t cut_ = 0;
  bool always_ = false;
};

}  // namespace paclab
