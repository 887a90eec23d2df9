#pragma once

// Hypothesis classes, empirical risk, exhaustive ERM and brute-force VC dimension.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "paclab/errors.hpp"
#include "paclab/exactprob.hpp"
#include "paclab/toy_model.hpp"

namespace paclab {

inline constexpr std::size_t max_shatter_points = 25;

// Empirical risk errors / sample_size. Always a multiple of 1/sample_size.
struct RiskValue {
  std::size_t errors = 0;
  std::size_t sample_size = 1;

  Rational value() const {
    Rational r(static_cast<unsigned long>(errors), static_cast<unsigned long>(sample_size));
    r.canonicalize();
    return r;
  }
  ExactProbability probability() const { return ExactProbability(value()); }
  double to_double() const { return static_cast<double>(errors) / static_cast<double>(sample_size); }

  friend bool operator==(const RiskValue& a, const RiskValue& b) { return a.value() == b.value(); }
  friend std::strong_ordering operator<=>(const RiskValue& a, const RiskValue& b) {
    // errors_a / n_a vs errors_b / n_b without rationals
    __extension__ typedef unsigned __int128 u128;
    u128 lhs = static_cast<u128>(a.errors) * b.sample_size;
    u128 rhs = static_cast<u128>(b.errors) * a.sample_size;
    return lhs <=> rhs;
  }
};

class HypothesisClass {
 public:
  enum class Kind { explicit_finite, threshold_on_line, interval_on_line };

  // Members are labelings of `domain` (ascending, distinct), one label per point.
  static HypothesisClass explicit_finite(std::vector<double> domain, std::vector<std::vector<Label>> members,
                                         std::optional<std::size_t> declared_vc_dim = std::nullopt) {
    if (members.empty()) throw domain_error("hypothesis class is empty");
    for (std::size_t i = 1; i < domain.size(); ++i)
      if (!(domain[i - 1] < domain[i])) throw domain_error("class domain must be strictly ascending");
    for (const auto& m : members) {
      if (m.size() != domain.size()) throw domain_error("member labeling length differs from domain size");
      for (Label y : m)
        if (y > 1) throw domain_error("label must be 0 or 1");
    }
    std::set<std::vector<Label>> seen(members.begin(), members.end());
    if (seen.size() != members.size()) throw domain_error("duplicate labelings in hypothesis class");
    HypothesisClass h(Kind::explicit_finite);
    h.domain_ = std::move(domain);
    h.members_ = std::move(members);
    h.declared_vc_ = declared_vc_dim;
    return h;
  }

  static HypothesisClass thresholds() {
    HypothesisClass h(Kind::threshold_on_line);
    h.declared_vc_ = 1;
    return h;
  }

  static HypothesisClass intervals() {
    HypothesisClass h(Kind::interval_on_line);
    h.declared_vc_ = 2;
    return h;
  }

  // Every labeling of `domain`: 2^|domain| members, VC dimension |domain|.
  static HypothesisClass all_labelings(std::vector<double> domain) {
    if (domain.size() > max_shatter_points) throw resource_error("too many points to enumerate all labelings");
    std::size_t n = domain.size();
    std::vector<std::vector<Label>> members(std::size_t{1} << n, std::vector<Label>(n));
    for (std::size_t mask = 0; mask < members.size(); ++mask)
      for (std::size_t j = 0; j < n; ++j) members[mask][j] = (mask >> j) & 1;
    return explicit_finite(std::move(domain), std::move(members), n);
  }

  Kind kind() const noexcept { return kind_; }
  std::optional<std::size_t> declared_vc_dim() const noexcept { return declared_vc_; }
  const std::vector<double>& domain() const noexcept { return domain_; }
  const std::vector<std::vector<Label>>& members() const noexcept { return members_; }

  Hypothesis member(std::size_t i) const {
    std::vector<LabeledPoint> entries(domain_.size());
    for (std::size_t j = 0; j < domain_.size(); ++j) entries[j] = {domain_[j], members_.at(i)[j]};
    return Hypothesis::table(std::move(entries));
  }

  // Finite candidate list that realizes every behaviour of the class on the
  // given ascending points, in tie-break order:
  //   explicit   members in index order
  //   threshold  -inf, each point, +inf
  //   interval   empty, then [p_i, p_j] for i <= j lexicographically
  std::vector<Hypothesis> candidates(std::span<const double> ascending_points) const {
    std::vector<Hypothesis> out;
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case Kind::explicit_finite:
        out.reserve(members_.size());
        for (std::size_t i = 0; i < members_.size(); ++i) out.push_back(member(i));
        break;
      case Kind::threshold_on_line:
        out.push_back(Hypothesis::threshold(-inf));
        for (double p : ascending_points) out.push_back(Hypothesis::threshold(p));
        out.push_back(Hypothesis::threshold(inf));
        break;
      case Kind::interval_on_line:
        out.push_back(Hypothesis::interval(inf, -inf));
        for (std::size_t i = 0; i < ascending_points.size(); ++i)
          for (std::size_t j = i; j < ascending_points.size(); ++j)
            out.push_back(Hypothesis::interval(ascending_points[i], ascending_points[j]));
        break;
    }
    return out;
  }

  // Labelings (one row per candidate) of the ascending points.
  std::vector<std::vector<Label>> labelings_on(std::span<const double> ascending_points) const {
    std::vector<std::vector<Label>> rows;
    if (kind_ == Kind::explicit_finite) {
      std::vector<std::size_t> idx = domain_indices(ascending_points);
      rows.reserve(members_.size());
      for (const auto& m : members_) {
        std::vector<Label> row(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) row[j] = m[idx[j]];
        rows.push_back(std::move(row));
      }
      return rows;
    }
    for (const auto& h : candidates(ascending_points)) rows.push_back(h.labels_on(ascending_points));
    return rows;
  }

  // Positions of the given points in the explicit class's domain.
  std::vector<std::size_t> domain_indices(std::span<const double> points) const {
    std::vector<std::size_t> idx(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      auto it = std::lower_bound(domain_.begin(), domain_.end(), points[j]);
      if (it == domain_.end() || *it != points[j])
        throw domain_error("point " + std::to_string(points[j]) + " is outside the class domain");
      idx[j] = static_cast<std::size_t>(it - domain_.begin());
    }
    return idx;
  }

 private:
  explicit HypothesisClass(Kind k) : kind_(k) {}

  Kind kind_;
  std::vector<double> domain_;
  std::vector<std::vector<Label>> members_;
  std::optional<std::size_t> declared_vc_;
};

// L_S(h) = sum |h(x_i) - y_i| / m.
inline RiskValue empirical_risk(const Hypothesis& h, const LabeledSample& sample) {
  if (sample.empty()) throw domain_error("empirical risk of an empty sample");
  RiskValue r{0, sample.size()};
  for (const auto& p : sample.pairs) r.errors += h(p.x) != p.y;
  return r;
}

struct ErmResult {
  Hypothesis hypothesis;
  RiskValue risk;
  std::size_t candidate_index = 0;  // position in HypothesisClass::candidates order
};

// Exhaustive empirical risk minimization. Ties go to the lowest candidate index.
inline ErmResult erm(const HypothesisClass& H, const LabeledSample& sample) {
  if (sample.empty()) throw domain_error("ERM on an empty sample");

  if (H.kind() == HypothesisClass::Kind::explicit_finite) {
    std::vector<double> xs(sample.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = sample.pairs[i].x;
    std::vector<std::size_t> idx = H.domain_indices(xs);
    std::size_t best = 0;
    std::size_t best_errors = std::numeric_limits<std::size_t>::max();
    const auto& members = H.members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      std::size_t errors = 0;
      for (std::size_t i = 0; i < idx.size() && errors < best_errors; ++i)
        errors += members[k][idx[i]] != sample.pairs[i].y;
      if (errors < best_errors) {
        best_errors = errors;
        best = k;
      }
    }
    return {H.member(best), RiskValue{best_errors, sample.size()}, best};
  }

  // Parametric: tally labels per distinct x, then score each canonical candidate.
  std::vector<LabeledPoint> sorted = sample.pairs;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  std::vector<double> xs;
  std::vector<std::size_t> zeros, ones;
  for (const auto& p : sorted) {
    if (xs.empty() || xs.back() != p.x) {
      xs.push_back(p.x);
      zeros.push_back(0);
      ones.push_back(0);
    }
    (p.y ? ones : zeros).back() += 1;
  }
  std::vector<Hypothesis> cands = H.candidates(xs);
  std::size_t best = 0;
  std::size_t best_errors = std::numeric_limits<std::size_t>::max();
  for (std::size_t k = 0; k < cands.size(); ++k) {
    std::vector<Label> labels = cands[k].labels_on(xs);
    std::size_t errors = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) errors += labels[j] ? zeros[j] : ones[j];
    if (errors < best_errors) {
      best_errors = errors;
      best = k;
    }
  }
  return {cands[best], RiskValue{best_errors, sample.size()}, best};
}

namespace detail {

// Distinct labelings of `points` realized by H; bit j of a mask is the label
// of points[j]. At most 32 points.
inline std::vector<std::uint32_t> labeling_masks(const HypothesisClass& H, std::span<const double> points) {
  if (points.size() > 32) throw resource_error("cannot track labelings of more than 32 points");
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> sorted(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = points[order[i]];
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1] == sorted[i]) throw domain_error("shattering needs distinct points");

  std::vector<std::uint32_t> masks;
  for (const auto& row : H.labelings_on(sorted)) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i]) mask |= std::uint32_t{1} << order[i];
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

// Does the set of domain labelings (masks over the full domain) shatter `subset`?
inline bool shatters_subset(std::span<const std::uint32_t> domain_masks, std::span<const std::size_t> subset,
                            std::vector<char>& seen) {
  std::size_t need = std::size_t{1} << subset.size();
  seen.assign(need, 0);
  std::size_t found = 0;
  for (std::uint32_t mask : domain_masks) {
    std::size_t restricted = 0;
    for (std::size_t j = 0; j < subset.size(); ++j) restricted |= static_cast<std::size_t>((mask >> subset[j]) & 1u) << j;
    if (!seen[restricted]) {
      seen[restricted] = 1;
      if (++found == need) return true;
    }
  }
  return false;
}

}  // namespace detail

// True iff every labeling of `points` is realized by some member of H.
inline bool shatters(const HypothesisClass& H, std::span<const double> points) {
  if (points.size() > max_shatter_points)
    throw resource_error("cannot enumerate 2^" + std::to_string(points.size()) + " labelings");
  auto masks = detail::labeling_masks(H, points);
  return masks.size() == (std::size_t{1} << points.size());
}

struct VcDimension {
  std::size_t value = 0;
  bool at_least = false;  // a cap-sized subset shattered; the true value may be larger
};

// Largest d <= cap such that some d-subset of `domain` is shattered. Subsets
// are tried in size-lexicographic order; since shattering is inherited by
// subsets, the search stops at the first size with no shattered subset.
inline VcDimension vc_dimension_bruteforce(const HypothesisClass& H, std::span<const double> domain, std::size_t cap) {
  if (cap > max_shatter_points) throw resource_error("VC search cap above " + std::to_string(max_shatter_points));
  std::size_t limit = std::min(cap, domain.size());
  auto masks = detail::labeling_masks(H, domain);

  VcDimension result;
  std::vector<char> seen;
  for (std::size_t d = 1; d <= limit; ++d) {
    std::vector<std::size_t> subset(d);
    for (std::size_t j = 0; j < d; ++j) subset[j] = j;
    bool found = false;
    while (true) {
      if (detail::shatters_subset(masks, subset, seen)) {
        found = true;
        break;
      }
      // next d-combination of {0..n-1}
      std::size_t n = domain.size();
      std::size_t i = d;
      while (i > 0 && subset[i - 1] == n - d + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < d; ++j) subset[j] = subset[j - 1] + 1;
    }
    if (!found) break;
    result.value = d;
  }
  result.at_least = result.value == cap;
  return result;
}

// One member per line as a bit string over the ordered domain ("0101").
// Blank lines and lines starting with '#' are skipped. Domain defaults to 1..n.
inline HypothesisClass load_class_text(std::istream& in, std::optional<std::vector<double>> domain = std::nullopt) {
  std::vector<std::vector<Label>> members;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t");
    std::string bits = line.substr(first, last - first + 1);
    std::vector<Label> row;
    for (char c : bits) {
      if (c != '0' && c != '1') throw parse_error(lineno, "expected a bit string, got '" + bits + "'");
      row.push_back(static_cast<Label>(c - '0'));
    }
    if (members.empty()) width = row.size();
    else if (row.size() != width) throw parse_error(lineno, "bit string length differs from earlier lines");
    members.push_back(std::move(row));
  }
  if (members.empty()) throw domain_error("hypothesis class file has no members");
  std::vector<double> dom;
  if (domain) {
    dom = *domain;
    if (dom.size() != width) throw domain_error("domain size differs from bit string length");
  } else {
    for (std::size_t i = 0; i < width; ++i) dom.push_back(static_cast<double>(i + 1));
  }
  return HypothesisClass::explicit_finite(std::move(dom), std::move(members));
}

// Training set text: one "x,label" pair per line; '#' comments and blank lines skipped.
inline LabeledSample load_sample(std::istream& in) {
  LabeledSample s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw parse_error(lineno, "expected 'x,label'");
    std::string xs = line.substr(0, comma), ys = line.substr(comma + 1);
    double x = 0;
    std::size_t used = 0;
    try {
      x = std::stod(xs, &used);
    } catch (const std::exception&) {
      throw parse_error(lineno, "bad point '" + xs + "'");
    }
    if (xs.find_first_not_of(" \t", used) != std::string::npos) throw parse_error(lineno, "bad point '" + xs + "'");
    auto yf = ys.find_first_not_of(" \t");
    auto yl = ys.find_last_not_of(" \t");
    if (yf == std::string::npos || yf != yl || (ys[yf] != '0' && ys[yf] != '1'))
      throw parse_error(lineno, "label must be 0 or 1");
    s.pairs.push_back({x, static_cast<Label>(ys[yf] - '0')});
  }
  return s;
}

}  // namespace paclab
