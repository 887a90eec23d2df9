#pragma once

// Finite-domain distributions, labeled samples, hypotheses, and the Toy
// problem: m points, uniform marginal, each label flipped with probability q.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paclab/errors.hpp"
#include "paclab/exactprob.hpp"
#include "paclab/montecarlo.hpp"
#include "paclab/random.hpp"

namespace paclab {

using Label = std::uint8_t;

struct LabeledPoint {
  double x;
  Label y;

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

struct LabeledSample {
  std::vector<LabeledPoint> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// A labeling rule h: points -> {0,1}. Tables are defined only on their own
// keys; thresholds and intervals are defined everywhere.
class Hypothesis {
 public:
  enum class Kind { table, threshold, interval };

  // Entries may arrive in any order; duplicate keys must agree.
  static Hypothesis table(std::vector<LabeledPoint> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    std::vector<LabeledPoint> unique;
    unique.reserve(entries.size());
    for (const auto& e : entries) {
      if (e.y > 1) throw domain_error("label must be 0 or 1");
      if (!unique.empty() && unique.back().x == e.x) {
        if (unique.back().y != e.y)
          throw domain_error("conflicting labels for point " + std::to_string(e.x));
        continue;
      }
      unique.push_back(e);
    }
    Hypothesis h(Kind::table);
    h.entries_ = std::move(unique);
    return h;
  }

  // h(x) = 1 iff x >= a. a = -inf labels everything 1, a = +inf everything 0.
  static Hypothesis threshold(double a) {
    Hypothesis h(Kind::threshold);
    h.lo_ = a;
    return h;
  }

  // h(x) = 1 iff a <= x <= b. Empty when a > b.
  static Hypothesis interval(double a, double b) {
    Hypothesis h(Kind::interval);
    h.lo_ = a;
    h.hi_ = b;
    return h;
  }

  Kind kind() const noexcept { return kind_; }
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }
  const std::vector<LabeledPoint>& entries() const noexcept { return entries_; }

  bool defined_on(double x) const {
    if (kind_ != Kind::table) return true;
    return find(x) != entries_.end();
  }

  Label operator()(double x) const {
    switch (kind_) {
      case Kind::threshold:
        return x >= lo_ ? 1 : 0;
      case Kind::interval:
        return lo_ <= x && x <= hi_ ? 1 : 0;
      case Kind::table:
        break;
    }
    auto it = find(x);
    if (it == entries_.end()) throw domain_error("hypothesis undefined at point " + std::to_string(x));
    return it->y;
  }

  // Labels of an ascending list of points, in one merge pass for tables.
  std::vector<Label> labels_on(std::span<const double> ascending_points) const {
    std::vector<Label> out(ascending_points.size());
    if (kind_ != Kind::table) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(ascending_points[i]);
      return out;
    }
    auto it = entries_.begin();
    for (std::size_t i = 0; i < out.size(); ++i) {
      double x = ascending_points[i];
      while (it != entries_.end() && it->x < x) ++it;
      if (it == entries_.end() || it->x != x)
        throw domain_error("hypothesis undefined at point " + std::to_string(x));
      out[i] = it->y;
    }
    return out;
  }

  // Same rule with every table label inverted (tables only).
  Hypothesis inverted() const {
    if (kind_ != Kind::table) throw domain_error("only table hypotheses can be inverted");
    Hypothesis h = *this;
    for (auto& e : h.entries_) e.y ^= 1;
    return h;
  }

  std::string describe() const {
    auto num = [](double v) {
      if (std::isinf(v)) return std::string(v < 0 ? "-inf" : "+inf");
      std::string s = std::to_string(v);
      s.erase(s.find_last_not_of('0') + 1);
      if (s.back() == '.') s.pop_back();
      return s;
    };
    switch (kind_) {
      case Kind::threshold:
        return "threshold x >= " + num(lo_);
      case Kind::interval:
        return lo_ > hi_ ? std::string("empty interval") : "interval [" + num(lo_) + ", " + num(hi_) + "]";
      case Kind::table:
        break;
    }
    std::string bits;
    for (const auto& e : entries_) bits += static_cast<char>('0' + e.y);
    return "table " + bits;
  }

  friend bool operator==(const Hypothesis& a, const Hypothesis& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::table) return a.entries_ == b.entries_;
    return a.lo_ == b.lo_ && (a.kind_ == Kind::threshold || a.hi_ == b.hi_);
  }

 private:
  explicit Hypothesis(Kind k) : kind_(k) {}

  std::vector<LabeledPoint>::const_iterator find(double x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const LabeledPoint& e, double v) { return e.x < v; });
    return it != entries_.end() && it->x == x ? it : entries_.end();
  }

  Kind kind_;
  std::vector<LabeledPoint> entries_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

// Explicit joint distribution over points x {0,1}.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<double> points, std::vector<Rational> marginal, std::vector<Rational> label_prob_one)
      : points_(std::move(points)), marginal_(std::move(marginal)), prob_one_(std::move(label_prob_one)) {
    if (points_.empty()) throw domain_error("distribution needs at least one point");
    if (marginal_.size() != points_.size() || prob_one_.size() != points_.size())
      throw domain_error("points, marginal and label probabilities differ in length");
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (!(points_[i - 1] < points_[i])) throw domain_error("points must be strictly ascending");
    Rational total = 0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      marginal_[i].canonicalize();
      prob_one_[i].canonicalize();
      if (marginal_[i] < 0) throw domain_error("negative marginal probability");
      if (prob_one_[i] < 0 || prob_one_[i] > 1) throw domain_error("P(y=1|x) outside [0,1]");
      total += marginal_[i];
    }
    if (total != 1) throw domain_error("marginal sums to " + total.get_str() + ", not 1");
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<Rational>& marginal() const noexcept { return marginal_; }
  const std::vector<Rational>& label_prob_one() const noexcept { return prob_one_; }

  bool uniform() const {
    Rational u(1, static_cast<unsigned long>(points_.size()));
    return std::all_of(marginal_.begin(), marginal_.end(), [&](const Rational& p) { return p == u; });
  }

  std::optional<std::size_t> index_of(double x) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), x);
    if (it == points_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

  // Label with P(y | x) >= 1/2 (ties resolve to 0).
  std::vector<Label> majority_labels() const {
    std::vector<Label> out(points_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = prob_one_[i] > Rational(1, 2) ? 1 : 0;
    return out;
  }

 private:
  std::vector<double> points_;
  std::vector<Rational> marginal_;
  std::vector<Rational> prob_one_;
};

// Settings triple (m, q, epsilon) of the Toy problem.
struct ToySettings {
  std::uint64_t m = 1;
  Rational q{0};
  Rational epsilon{1, 2};

  // q = 0 is admitted as the noiseless limit.
  void validate() const {
    if (m < 1) throw domain_error("toy settings: m must be >= 1");
    if (q < 0 || q >= Rational(1, 2)) throw domain_error("toy settings: q must satisfy 0 <= q < 1/2");
    if (epsilon <= 0 || epsilon >= 1) throw domain_error("toy settings: epsilon must lie in (0,1)");
  }
};

// Points are keyed 1..m. Point i carries majority_labels[i-1] with
// probability 1-q and the other label with probability q.
inline FiniteDistribution make_toy_distribution(const ToySettings& settings, std::span<const Label> majority_labels) {
  settings.validate();
  if (majority_labels.size() != settings.m)
    throw domain_error("majority labels length " + std::to_string(majority_labels.size()) + " != m = " +
                       std::to_string(settings.m));
  std::vector<double> points(settings.m);
  std::vector<Rational> marginal(settings.m, Rational(1, static_cast<unsigned long>(settings.m)));
  std::vector<Rational> one(settings.m);
  for (std::size_t i = 0; i < settings.m; ++i) {
    if (majority_labels[i] > 1) throw domain_error("label must be 0 or 1");
    points[i] = static_cast<double>(i + 1);
    one[i] = majority_labels[i] == 1 ? Rational(1 - settings.q) : settings.q;
  }
  return FiniteDistribution(std::move(points), std::move(marginal), std::move(one));
}

inline FiniteDistribution make_toy_distribution(const ToySettings& settings) {
  std::vector<Label> zeros(settings.m, 0);
  return make_toy_distribution(settings, zeros);
}

// Exact L_D for labelings of a fixed distribution's points. All per-point
// error weights share one denominator, so evaluation is integer addition.
class ErrorEvaluator {
 public:
  explicit ErrorEvaluator(const FiniteDistribution& dist) : points_(dist.points()) {
    const auto& pm = dist.marginal();
    const auto& p1 = dist.label_prob_one();
    denominator_ = 1;
    for (std::size_t i = 0; i < pm.size(); ++i) {
      Rational w1 = pm[i] * p1[i];
      Rational w0 = pm[i] * (1 - p1[i]);
      mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), w1.get_den_mpz_t());
      mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), w0.get_den_mpz_t());
    }
    wrong_if_zero_.resize(pm.size());
    wrong_if_one_.resize(pm.size());
    for (std::size_t i = 0; i < pm.size(); ++i) {
      Rational w1 = pm[i] * p1[i] * denominator_;
      Rational w0 = pm[i] * (1 - p1[i]) * denominator_;
      wrong_if_zero_[i] = w1.get_num();
      wrong_if_one_[i] = w0.get_num();
    }
    fast_ = mpz_sizeinbase(denominator_.get_mpz_t(), 2) < 62;
    if (fast_) {
      fast_zero_.resize(pm.size());
      fast_one_.resize(pm.size());
      for (std::size_t i = 0; i < pm.size(); ++i) {
        fast_zero_[i] = static_cast<std::int64_t>(mpz_get_si(wrong_if_zero_[i].get_mpz_t()));
        fast_one_[i] = static_cast<std::int64_t>(mpz_get_si(wrong_if_one_[i].get_mpz_t()));
      }
    }
  }

  const std::vector<double>& points() const noexcept { return points_; }
  const BigInt& denominator() const noexcept { return denominator_; }

  // L_D * denominator() for a labeling given in point order.
  BigInt scaled_error(std::span<const Label> labels) const {
    check(labels);
    if (fast_) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < labels.size(); ++i) s += labels[i] ? fast_one_[i] : fast_zero_[i];
      return BigInt(static_cast<long>(s));
    }
    BigInt s = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) s += labels[i] ? wrong_if_one_[i] : wrong_if_zero_[i];
    return s;
  }

  ExactProbability error(std::span<const Label> labels) const {
    return ExactProbability(Rational(scaled_error(labels), denominator_));
  }

  ExactProbability error(const Hypothesis& h) const { return error(h.labels_on(points_)); }

  // L_D <= bound, decided without building a rational.
  bool error_at_most(std::span<const Label> labels, const Rational& bound) const {
    check(labels);
    if (fast_) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < labels.size(); ++i) s += labels[i] ? fast_one_[i] : fast_zero_[i];
      return Rational(BigInt(static_cast<long>(s)), denominator_) <= bound;
    }
    return Rational(scaled_error(labels), denominator_) <= bound;
  }

 private:
  void check(std::span<const Label> labels) const {
    if (labels.size() != points_.size()) throw domain_error("labeling does not match the distribution's domain");
  }

  std::vector<double> points_;
  BigInt denominator_;
  std::vector<BigInt> wrong_if_zero_;
  std::vector<BigInt> wrong_if_one_;
  bool fast_ = false;
  std::vector<std::int64_t> fast_zero_;
  std::vector<std::int64_t> fast_one_;
};

// L_D(h) = P_{(x,y)~D}[h(x) != y].
inline ExactProbability generalization_error(const Hypothesis& h, const FiniteDistribution& dist) {
  Rational total = 0;
  const auto& pts = dist.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Rational& p1 = dist.label_prob_one()[i];
    total += dist.marginal()[i] * (h(pts[i]) == 1 ? Rational(1 - p1) : p1);
  }
  return ExactProbability(total);
}

// Draws training sets from a fixed distribution. Toy mode emits every point
// once, in domain order; otherwise `size` i.i.d. pairs from the joint law.
class TrainingSetSampler {
 public:
  TrainingSetSampler(const FiniteDistribution& dist, bool toy_mode, std::optional<std::size_t> size = std::nullopt)
      : points_(dist.points()), toy_mode_(toy_mode), size_(size.value_or(dist.size())) {
    if (toy_mode_ && !dist.uniform()) throw domain_error("toy-mode sampling requires a uniform marginal");
    if (toy_mode_ && size && *size != dist.size())
      throw domain_error("toy-mode samples cover the domain exactly once");
    for (const auto& p : dist.label_prob_one()) label_one_.emplace_back(p);
    Rational cum = 0;
    for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
      cum += dist.marginal()[i];
      cumulative_.emplace_back(cum);
    }
  }

  std::size_t sample_size() const noexcept { return size_; }

  // Point indices and labels of one draw, generated from `seed` alone.
  void draw_indices(std::uint64_t seed, std::vector<std::size_t>& idx, std::vector<Label>& labels) const {
    SplitMix64 gen(seed);
    idx.resize(size_);
    labels.resize(size_);
    for (std::size_t j = 0; j < size_; ++j) {
      std::size_t i = toy_mode_ ? j : pick_point(gen());
      idx[j] = i;
      labels[j] = label_one_[i](gen) ? 1 : 0;
    }
  }

  LabeledSample draw(std::uint64_t seed) const {
    std::vector<std::size_t> idx;
    std::vector<Label> labels;
    draw_indices(seed, idx, labels);
    LabeledSample s;
    s.pairs.reserve(size_);
    for (std::size_t j = 0; j < size_; ++j) s.pairs.push_back({points_[idx[j]], labels[j]});
    return s;
  }

 private:
  std::size_t pick_point(std::uint64_t u) const {
    for (std::size_t i = 0; i < cumulative_.size(); ++i)
      if (cumulative_[i].test(u)) return i;
    return cumulative_.size();
  }

  std::vector<double> points_;
  bool toy_mode_;
  std::size_t size_;
  std::vector<BernoulliThreshold> label_one_;
  std::vector<BernoulliThreshold> cumulative_;  // u < floor(F(x_i) 2^64)
};

inline LabeledSample sample_training_set(const FiniteDistribution& dist, bool toy_mode, std::uint64_t seed) {
  return TrainingSetSampler(dist, toy_mode).draw(seed);
}

// A learner maps a training set (and a seed for any internal randomness) to a hypothesis.
template <class L>
concept Learner = requires(const L& learner, const LabeledSample& s, std::uint64_t seed) {
  { learner(s, seed) } -> std::convertible_to<Hypothesis>;
};

// Memorizes the training set: h(x_i) = y_i.
inline Hypothesis trivial_learner(const LabeledSample& sample) {
  return Hypothesis::table(sample.pairs);
}

// The trivial learner's hypothesis with `flips` distinct, uniformly chosen
// points relabeled.
inline Hypothesis perturbing_learner(const LabeledSample& sample, std::size_t flips, std::uint64_t seed) {
  if (flips > sample.size()) throw domain_error("cannot flip more labels than the sample has pairs");
  Hypothesis base = trivial_learner(sample);
  std::vector<LabeledPoint> entries = base.entries();
  if (flips > entries.size()) throw domain_error("cannot flip more labels than the sample has distinct points");
  SplitMix64 gen(seed);
  // Partial Fisher-Yates over entry positions.
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < flips; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(gen, order.size() - i));
    std::swap(order[i], order[j]);
    entries[order[i]].y ^= 1;
  }
  return Hypothesis::table(std::move(entries));
}

struct TrivialLearner {
  Hypothesis operator()(const LabeledSample& s, std::uint64_t) const { return trivial_learner(s); }
};

struct PerturbingLearner {
  std::size_t flips = 0;
  Hypothesis operator()(const LabeledSample& s, std::uint64_t seed) const { return perturbing_learner(s, flips, seed); }
};

// flip_fraction: h disagrees with the majority labeling on at most floor(eps m) points.
// exact_error:   L_D(h) <= eps.
enum class SuccessCriterion { flip_fraction, exact_error };

inline std::uint64_t flip_threshold(const ToySettings& s) {
  Rational em = s.epsilon * Rational(static_cast<unsigned long>(s.m));
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), em.get_num_mpz_t(), em.get_den_mpz_t());
  return std::min<std::uint64_t>(mpz_get_ui(fl.get_mpz_t()), s.m);
}

// Largest flip count k with q + k(1-2q)/m <= eps, or nullopt when eps < q.
inline std::optional<std::uint64_t> max_flips_within_error(const ToySettings& s) {
  if (s.epsilon < s.q) return std::nullopt;
  Rational bound = (s.epsilon - s.q) * Rational(static_cast<unsigned long>(s.m)) / (1 - 2 * s.q);
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  if (mpz_cmp_ui(fl.get_mpz_t(), s.m) > 0) return s.m;
  return mpz_get_ui(fl.get_mpz_t());
}

// Exact success probability of the trivial learner under either criterion.
inline ExactProbability success_probability_exact(const ToySettings& settings, SuccessCriterion criterion) {
  settings.validate();
  if (criterion == SuccessCriterion::flip_fraction)
    return binomial_tail_le(settings.m, settings.q, flip_threshold(settings));
  auto k_max = max_flips_within_error(settings);
  if (!k_max) return ExactProbability(0, 1);
  return binomial_tail_le(settings.m, settings.q, *k_max);
}

struct ToyExperimentResult {
  McEstimate flip_fraction;
  McEstimate exact_error;
  MeanEstimate error;  // L_D of the learner's hypothesis
};

struct MonteCarloOptions {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Samples Toy training sets, runs the learner, and scores each hypothesis
// under both criteria. Trial i draws its sample from stream_seed(seed, 2i)
// and hands stream_seed(seed, 2i+1) to the learner.
template <Learner L>
ToyExperimentResult run_toy_experiment(const ToySettings& settings, std::span<const Label> majority_labels,
                                       const L& learner, const MonteCarloOptions& opt) {
  if (opt.trials < 1) throw domain_error("Monte Carlo needs at least one trial");
  FiniteDistribution dist = make_toy_distribution(settings, majority_labels);
  TrainingSetSampler sampler(dist, true);
  ErrorEvaluator evaluator(dist);
  const std::uint64_t flip_limit = flip_threshold(settings);
  std::vector<Label> majority(majority_labels.begin(), majority_labels.end());
  BigInt error_limit;  // L_D <= eps  <=>  scaled error <= floor(eps * denominator)
  {
    Rational scaled_eps = settings.epsilon * evaluator.denominator();
    mpz_fdiv_q(error_limit.get_mpz_t(), scaled_eps.get_num_mpz_t(), scaled_eps.get_den_mpz_t());
  }

  ToyExperimentResult init;
  init.flip_fraction.trials = init.exact_error.trials = 0;
  init.error.denominator = evaluator.denominator();

  auto step = [&](std::uint64_t i, ToyExperimentResult& acc) {
    LabeledSample s = sampler.draw(stream_seed(opt.seed, 2 * i));
    Hypothesis h = learner(s, stream_seed(opt.seed, 2 * i + 1));
    std::vector<Label> labels = h.labels_on(dist.points());
    std::uint64_t disagreements = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) disagreements += labels[j] != majority[j];
    BigInt scaled = evaluator.scaled_error(labels);
    ++acc.flip_fraction.trials;
    ++acc.exact_error.trials;
    if (disagreements <= flip_limit) ++acc.flip_fraction.successes;
    if (scaled <= error_limit) ++acc.exact_error.successes;
    acc.error.add(scaled);
  };
  auto merge = [](ToyExperimentResult& into, const ToyExperimentResult& from) {
    into.flip_fraction.successes += from.flip_fraction.successes;
    into.flip_fraction.trials += from.flip_fraction.trials;
    into.exact_error.successes += from.exact_error.successes;
    into.exact_error.trials += from.exact_error.trials;
    into.error.merge(from.error);
  };
  return monte_carlo_reduce(opt.trials, opt.threads, init, step, merge);
}

template <Learner L>
McEstimate success_probability_mc(const ToySettings& settings, const L& learner, SuccessCriterion criterion,
                                  const MonteCarloOptions& opt) {
  std::vector<Label> zeros(settings.m, 0);
  auto r = run_toy_experiment(settings, zeros, learner, opt);
  return criterion == SuccessCriterion::flip_fraction ? r.flip_fraction : r.exact_error;
}

}  // namespace paclab
