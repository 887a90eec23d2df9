#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "paclab/exactprob.hpp"

namespace paclab {

// Proportion of successful trials, with the binomial standard error.
struct McEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  Rational fraction() const { return trials == 0 ? Rational(0) : Rational(BigInt(std::to_string(successes)), BigInt(std::to_string(trials))); }
  double estimate() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials); }
  double standard_error() const {
    if (trials == 0) return 0.0;
    double p = estimate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

// Sample mean of a statistic whose values are integer multiples of
// 1/denominator. Sums stay exact, so the reduction order cannot change them.
struct MeanEstimate {
  BigInt denominator{1};
  BigInt sum{0};
  BigInt sum_squares{0};
  std::uint64_t trials = 0;

  void add(const BigInt& numerator) {
    sum += numerator;
    sum_squares += numerator * numerator;
    ++trials;
  }
  void merge(const MeanEstimate& other) {
    sum += other.sum;
    sum_squares += other.sum_squares;
    trials += other.trials;
  }

  Rational mean() const {
    if (trials == 0) return Rational(0);
    Rational m(sum, denominator * count());
    m.canonicalize();
    return m;
  }
  double standard_error() const {
    if (trials < 2) return 0.0;
    BigInt n = count();
    Rational var(n * sum_squares - sum * sum, denominator * denominator * n * (n - 1));
    var.canonicalize();
    return std::sqrt(var.get_d() / static_cast<double>(trials));
  }

 private:
  BigInt count() const { return BigInt(std::to_string(trials)); }
};

// Runs step(i, acc) for every trial index i in [0, trials), splitting the
// index range into contiguous blocks across `threads` workers, then folds
// the per-worker accumulators together with merge(into, from). The result is
// independent of `threads` as long as merge is commutative and associative.
template <class Acc, class Step, class Merge>
Acc monte_carlo_reduce(std::uint64_t trials, unsigned threads, const Acc& init, Step step, Merge merge) {
  threads = std::max(1u, threads);
  if (trials < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(1, trials));

  std::vector<Acc> partial(threads, init);
  auto run_block = [&](unsigned w) {
    std::uint64_t begin = trials * w / threads;
    std::uint64_t end = trials * (w + 1) / threads;
    for (std::uint64_t i = begin; i < end; ++i) step(i, partial[w]);
  };

  if (threads == 1) {
    run_block(0);
  } else {
    std::vector<std::exception_ptr> failures(threads);
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            run_block(w);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& f : failures)
      if (f) std::rethrow_exception(f);
  }

  Acc total = init;
  for (const auto& p : partial) merge(total, p);
  return total;
}

}  // namespace paclab
