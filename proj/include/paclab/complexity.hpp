#pragma once

// Sample-complexity estimates, uniform-convergence checks, and the
// solvability verdict for a fixed training set.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paclab/errors.hpp"
#include "paclab/exactprob.hpp"
#include "paclab/hypothesis.hpp"
#include "paclab/montecarlo.hpp"
#include "paclab/toy_model.hpp"

namespace paclab {

enum class BoundFormula {
  simple_agnostic,  // ceil(C (d + ln(1/delta)) / eps^2)
  log_augmented,    // least m with m >= (C / eps^2) (d ln m + ln(1/delta))
};

// Least-squares fit of the log-augmented constant to the five mutually
// consistent published saturation estimates (eps, delta, d) ->
// (0.2,0.05,5) 140672, (0.2,0.05,30) 921275, (0.1,0.05,5) 651412,
// (0.1,0.05,10) 1340176, (0.1,0.05,30) 4217438.
inline Rational calibrated_constant() { return Rational(913, 10); }

struct ComplexityQuery {
  Rational epsilon{1, 10};
  Rational delta{1, 20};
  std::uint64_t vc_dim = 1;
  BoundFormula formula = BoundFormula::log_augmented;
  Rational constant = calibrated_constant();

  void validate() const {
    if (epsilon <= 0 || epsilon >= 1) throw domain_error("epsilon must lie in (0,1)");
    if (delta <= 0 || delta >= 1) throw domain_error("delta must lie in (0,1)");
    if (constant <= 0) throw domain_error("bound constant must be positive");
  }
};

namespace detail {

// Conservative double arithmetic: each result is nudged one ulp upward.
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

inline double rational_up(const Rational& r) {
  double d = r.get_d();  // truncates toward zero
  return Rational(d) == r ? d : up(d);
}

inline double ln_up(double x) { return up(std::log(x)); }

inline double ln_up(const Rational& r) {
  // log of an upper bound of r, then one more ulp for the log's own rounding.
  return ln_up(rational_up(r));
}

inline std::uint64_t ceil_to_count(double x) {
  if (!(x < 1.8e19)) throw std::overflow_error("saturation point exceeds 64-bit range");
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace detail

inline std::uint64_t saturation_point(const ComplexityQuery& query) {
  query.validate();
  using detail::up;
  const double scale = detail::rational_up(query.constant / (query.epsilon * query.epsilon));
  const double log_conf = detail::ln_up(Rational(1 / query.delta));
  const auto d = static_cast<double>(query.vc_dim);

  std::uint64_t simple = detail::ceil_to_count(up(scale * up(d + log_conf)));
  if (query.formula == BoundFormula::simple_agnostic) return simple;

  // m -> ceil(f(m)) is nondecreasing and f is concave, so iterating from the
  // simple bound (which lies below the fixed point) climbs to the least m with m >= f(m).
  auto f = [&](std::uint64_t m) {
    return detail::ceil_to_count(up(scale * up(up(d * detail::ln_up(static_cast<double>(m))) + log_conf)));
  };
  std::uint64_t m = std::max<std::uint64_t>(simple, 1);
  for (int iter = 0; iter < 10000; ++iter) {
    std::uint64_t next = f(m);
    if (next <= m) return m;
    m = next;
  }
  throw std::runtime_error("saturation fixed point did not converge");
}

// sup over h in H of |L_S(h) - L_D(h)|, with H enumerated on dist's points.
inline ExactProbability uc_sup_gap(const HypothesisClass& H, const LabeledSample& sample, const FiniteDistribution& dist) {
  if (sample.empty()) throw domain_error("uniform-convergence gap of an empty sample");
  ErrorEvaluator eval(dist);
  std::vector<std::size_t> idx(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    auto k = dist.index_of(sample.pairs[i].x);
    if (!k) throw domain_error("sample point " + std::to_string(sample.pairs[i].x) + " outside distribution domain");
    idx[i] = *k;
  }
  Rational best = 0;
  const Rational n(static_cast<unsigned long>(sample.size()));
  for (const auto& row : H.labelings_on(dist.points())) {
    std::size_t errors = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) errors += row[idx[i]] != sample.pairs[i].y;
    Rational gap = abs(Rational(static_cast<unsigned long>(errors)) / n - eval.error(row).value());
    if (gap > best) best = gap;
  }
  return ExactProbability(best);
}

struct UcSampling {
  bool toy_mode = true;                        // one pair per domain point
  std::optional<std::size_t> size;            // i.i.d. sample size when !toy_mode
};

// Monte Carlo estimate of P_S[ uc_sup_gap(H, S, dist) <= eps ].
// Trial i samples from stream_seed(seed, i).
inline McEstimate uc_probability_mc(const HypothesisClass& H, const FiniteDistribution& dist, const UcSampling& sampling,
                                    const Rational& epsilon, const MonteCarloOptions& opt) {
  if (opt.trials < 1) throw domain_error("Monte Carlo needs at least one trial");
  TrainingSetSampler sampler(dist, sampling.toy_mode, sampling.size);
  const std::size_t n = sampler.sample_size();
  if (n == 0) throw domain_error("sample size must be positive");
  ErrorEvaluator eval(dist);
  auto rows = H.labelings_on(dist.points());
  const BigInt& D = eval.denominator();
  // |errors/n - e/D| <= a/b  <=>  b |errors D - e n| <= a n D
  std::vector<BigInt> scaled_true(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) scaled_true[k] = eval.scaled_error(rows[k]) * static_cast<unsigned long>(n);
  const BigInt lhs_factor = epsilon.get_den();
  const BigInt rhs = epsilon.get_num() * static_cast<unsigned long>(n) * D;

  McEstimate init;
  auto step = [&](std::uint64_t i, McEstimate& acc) {
    std::vector<std::size_t> idx;
    std::vector<Label> labels;
    sampler.draw_indices(stream_seed(opt.seed, i), idx, labels);
    bool within = true;
    BigInt diff;
    for (std::size_t k = 0; k < rows.size() && within; ++k) {
      unsigned long errors = 0;
      for (std::size_t j = 0; j < n; ++j) errors += rows[k][idx[j]] != labels[j];
      diff = D * errors - scaled_true[k];
      within = lhs_factor * abs(diff) <= rhs;
    }
    ++acc.trials;
    if (within) ++acc.successes;
  };
  auto merge = [](McEstimate& into, const McEstimate& from) {
    into.successes += from.successes;
    into.trials += from.trials;
  };
  return monte_carlo_reduce(opt.trials, opt.threads, init, step, merge);
}

enum class Outcome { solved, no_solution_in_class, inconclusive, precondition_unmet };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::solved:
      return "Solved";
    case Outcome::no_solution_in_class:
      return "NoSolutionInClass";
    case Outcome::inconclusive:
      return "Inconclusive";
    case Outcome::precondition_unmet:
      return "PreconditionUnmet";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::precondition_unmet;
  std::optional<RiskValue> erm_risk;       // absent when ERM was not run
  std::optional<Hypothesis> hypothesis;
  std::uint64_t required_size = 0;
  Rational confidence{0};
};

struct VerdictOptions {
  // Charge both probabilistic events (uniform convergence and PAC) to the
  // confidence: 1 - 2 delta instead of 1 - delta.
  bool strict = false;
  // Replaces max(m_u, m_pac); used to exercise the procedure at desk scale.
  std::optional<std::uint64_t> required_size_override;
};

// Uniform-convergence and PAC queries at (eps/2, delta) for a class of VC dimension d.
inline std::pair<ComplexityQuery, ComplexityQuery> verdict_queries(const Rational& epsilon, const Rational& delta,
                                                                   std::uint64_t vc_dim, BoundFormula formula,
                                                                   const Rational& constant) {
  ComplexityQuery q{epsilon / 2, delta, vc_dim, formula, constant};
  return {q, q};
}

// Given |S| > max(m_u(eps/2, delta), m_pac(eps/2, delta)) and h = ERM_H(S):
//   L_S(h) <= eps/2 -> Solved, L_S(h) > 2 eps -> NoSolutionInClass, else Inconclusive.
inline Verdict verdict(const Rational& epsilon, const Rational& delta, const LabeledSample& sample,
                       const HypothesisClass& H, const ComplexityQuery& query_u, const ComplexityQuery& query_pac,
                       const VerdictOptions& options = {}) {
  if (epsilon <= 0 || epsilon >= 1) throw domain_error("epsilon must lie in (0,1)");
  if (delta <= 0 || delta >= 1) throw domain_error("delta must lie in (0,1)");
  const Rational half_eps = epsilon / 2;
  for (const auto* q : {&query_u, &query_pac})
    if (q->epsilon != half_eps || q->delta != delta)
      throw domain_error("saturation queries must be taken at (eps/2, delta)");

  Verdict v;
  v.required_size = options.required_size_override
                        ? *options.required_size_override
                        : std::max(saturation_point(query_u), saturation_point(query_pac));
  Rational conf = 1 - (options.strict ? Rational(2 * delta) : delta);
  v.confidence = conf < 0 ? Rational(0) : conf;
  if (sample.size() <= v.required_size) {
    v.outcome = Outcome::precondition_unmet;
    return v;
  }
  ErmResult best = erm(H, sample);
  Rational risk = best.risk.value();
  if (risk <= half_eps) v.outcome = Outcome::solved;
  else if (risk > 2 * epsilon) v.outcome = Outcome::no_solution_in_class;
  else v.outcome = Outcome::inconclusive;
  v.erm_risk = best.risk;
  v.hypothesis = std::move(best.hypothesis);
  return v;
}

}  // namespace paclab
