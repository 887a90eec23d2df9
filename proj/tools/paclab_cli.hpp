#pragma once

// Command-line front end. run() is separate from main() so tests can drive it
// in-process and compare outputs byte for byte.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paclab/paclab.hpp"

namespace paclab::cli {

namespace detail {

inline const CLI::Validator RationalText = CLI::Validator(
    [](std::string& s) -> std::string {
      try {
        parse_rational(s);
        return {};
      } catch (const std::exception& e) {
        return e.what();
      }
    },
    "RATIONAL", "rational");

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string output = "text";
  bool exact = false;

  void attach(CLI::App& sub) {
    sub.add_option("--seed", seed, "Master seed for all randomized output")->capture_default_str();
    sub.add_option("--threads", threads, "Monte Carlo worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    sub.add_option("--output", output, "Output format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
    sub.add_flag("--exact", exact, "Also print exact rationals");
  }
  bool csv() const { return output == "csv"; }
};

inline std::string show(const Rational& r, bool exact) {
  std::string s = to_decimal(r);
  if (exact) s += " (" + r.get_str() + ")";
  return s;
}

inline std::string fixed6(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

inline BoundFormula parse_formula(const std::string& s) {
  return s == "simple" ? BoundFormula::simple_agnostic : BoundFormula::log_augmented;
}

inline const char* formula_name(BoundFormula f) {
  return f == BoundFormula::simple_agnostic ? "simple" : "log-augmented";
}

inline std::string formula_note(BoundFormula f, const Rational& c) {
  std::string cs = to_plain(c);
  if (f == BoundFormula::simple_agnostic)
    return "formula: m = ceil(C (d + ln(1/delta)) / eps^2), C = " + cs;
  return "formula: least m with m >= (C/eps^2)(d ln m + ln(1/delta)), C = " + cs +
         (c == calibrated_constant() ? " (calibrated: least-squares fit to five published saturation estimates; the "
                                       "underlying bound and constant are an assumption, not a published formula)"
                                     : " (user-supplied)");
}

inline HypothesisClass make_class(const std::string& name, const std::vector<double>& domain) {
  if (name == "threshold") return HypothesisClass::thresholds();
  if (name == "interval") return HypothesisClass::intervals();
  if (name == "all") return HypothesisClass::all_labelings(domain);
  std::ifstream in(name);
  if (!in) throw domain_error("cannot open hypothesis class file '" + name + "'");
  return load_class_text(in);
}

inline LabeledSample read_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open sample file '" + path + "'");
  return load_sample(in);
}

inline std::vector<double> toy_points(std::uint64_t m) {
  std::vector<double> pts(m);
  for (std::uint64_t i = 0; i < m; ++i) pts[i] = static_cast<double>(i + 1);
  return pts;
}

inline std::vector<DatasetEntry> resolve_catalog(const std::string& flag) {
  std::string path = flag;
  if (path.empty())
    if (const char* env = std::getenv("PACLAB_CATALOG"); env && *env) path = env;
  if (path.empty()) return default_catalog();
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open catalog '" + path + "'");
  return load_catalog(in);
}

struct PublishedCell {
  const char* eps;
  const char* delta;
  std::uint64_t d;
  std::uint64_t value;
  bool excluded;
};

// Published saturation estimates. The (0.2, 0.05, 10) cell breaks monotonicity in d.
inline constexpr PublishedCell published_cells[] = {
    {"0.2", "0.05", 5, 140672, false},   {"0.2", "0.05", 10, 2906826, true},  {"0.2", "0.05", 30, 921275, false},
    {"0.1", "0.05", 5, 651412, false},   {"0.1", "0.05", 10, 1340176, false}, {"0.1", "0.05", 30, 4217438, false},
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"paclab: exact and Monte Carlo checks of learnability on finite problems", "paclab"};
  app.require_subcommand(1, 1);

  // statement1
  Common c_s1;
  std::uint64_t s1_m = 50;
  std::string s1_q = "1/10", s1_eps = "0.12";
  auto* statement1 = app.add_subcommand("statement1", "Exact success probability of the trivial learner on the Toy problem");
  statement1->add_option("--m", s1_m, "Domain size")->check(CLI::PositiveNumber)->capture_default_str();
  statement1->add_option("--q", s1_q, "Label flip probability")->check(RationalText)->capture_default_str();
  statement1->add_option("--eps", s1_eps, "Target error")->check(RationalText)->capture_default_str();
  c_s1.attach(*statement1);

  // toy
  Common c_toy;
  std::uint64_t toy_m = 50, toy_trials = 0, toy_flips = 0;
  std::string toy_q = "1/10", toy_eps = "0.12", toy_criterion = "both", toy_learner = "trivial";
  auto* toy = app.add_subcommand("toy", "Toy problem: exact and Monte Carlo success probabilities");
  toy->add_option("--m", toy_m, "Domain size")->check(CLI::PositiveNumber)->capture_default_str();
  toy->add_option("--q", toy_q, "Label flip probability")->check(RationalText)->capture_default_str();
  toy->add_option("--eps", toy_eps, "Target error")->check(RationalText)->capture_default_str();
  toy->add_option("--criterion", toy_criterion)->check(CLI::IsMember({"flip-fraction", "exact-error", "both"}))->capture_default_str();
  toy->add_option("--trials", toy_trials, "Monte Carlo trials (0 = exact only)")->capture_default_str();
  toy->add_option("--learner", toy_learner)->check(CLI::IsMember({"trivial", "perturbing"}))->capture_default_str();
  toy->add_option("--flips", toy_flips, "Labels the perturbing learner inverts")->capture_default_str();
  c_toy.attach(*toy);

  // saturation
  Common c_sat;
  std::string sat_eps = "0.1", sat_delta = "0.05", sat_formula = "log-augmented", sat_constant;
  std::uint64_t sat_d = 5;
  auto* saturation = app.add_subcommand("saturation", "Saturation point m_H(eps, delta) for VC dimension d");
  saturation->add_option("--eps", sat_eps)->check(RationalText)->capture_default_str();
  saturation->add_option("--delta", sat_delta)->check(RationalText)->capture_default_str();
  saturation->add_option("--d", sat_d, "VC dimension")->capture_default_str();
  saturation->add_option("--formula", sat_formula)->check(CLI::IsMember({"simple", "log-augmented"}))->capture_default_str();
  saturation->add_option("--constant", sat_constant, "Bound constant C (default: calibrated)")->check(RationalText);
  c_sat.attach(*saturation);

  // uc
  Common c_uc;
  std::uint64_t uc_m = 4, uc_trials = 10000;
  std::optional<std::size_t> uc_size;
  std::string uc_q = "1/4", uc_eps = "0.25", uc_class = "all";
  auto* uc = app.add_subcommand("uc", "Uniform-convergence gap on a Toy distribution");
  uc->add_option("--m", uc_m, "Domain size")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{20}))->capture_default_str();
  uc->add_option("--q", uc_q)->check(RationalText)->capture_default_str();
  uc->add_option("--eps", uc_eps)->check(RationalText)->capture_default_str();
  uc->add_option("--class", uc_class, "all | threshold | interval | PATH")->capture_default_str();
  uc->add_option("--sample-size", uc_size, "i.i.d. sample size (default: one pair per point)");
  uc->add_option("--trials", uc_trials)->capture_default_str();
  c_uc.attach(*uc);

  // erm
  Common c_erm;
  std::string erm_class = "threshold", erm_sample, erm_q = "1/10";
  std::uint64_t erm_m = 10;
  std::optional<std::size_t> erm_vc_cap;
  auto* erm_cmd = app.add_subcommand("erm", "Exhaustive empirical risk minimization");
  erm_cmd->add_option("--class", erm_class, "threshold | interval | all | PATH")->capture_default_str();
  erm_cmd->add_option("--sample", erm_sample, "Training set file (x,label per line); default: a Toy draw");
  erm_cmd->add_option("--m", erm_m, "Toy domain size when no sample file is given")->check(CLI::PositiveNumber)->capture_default_str();
  erm_cmd->add_option("--q", erm_q)->check(RationalText)->capture_default_str();
  erm_cmd->add_option("--vc-cap", erm_vc_cap, "Also brute-force the VC dimension on the sample points");
  c_erm.attach(*erm_cmd);

  // verdict
  Common c_v;
  std::string v_eps = "0.1", v_delta = "0.05", v_formula = "log-augmented", v_constant, v_class = "threshold", v_sample,
              v_q = "1/10";
  std::optional<std::uint64_t> v_d, v_required;
  std::uint64_t v_m = 50;
  bool v_strict = false;
  auto* verdict_cmd = app.add_subcommand("verdict", "Decide an applied instance (eps, S) from ERM and saturation points");
  verdict_cmd->add_option("--eps", v_eps)->check(RationalText)->capture_default_str();
  verdict_cmd->add_option("--delta", v_delta)->check(RationalText)->capture_default_str();
  verdict_cmd->add_option("--d", v_d, "VC dimension (default: the class's own)");
  verdict_cmd->add_option("--formula", v_formula)->check(CLI::IsMember({"simple", "log-augmented"}))->capture_default_str();
  verdict_cmd->add_option("--constant", v_constant)->check(RationalText);
  verdict_cmd->add_option("--class", v_class, "threshold | interval | all | PATH")->capture_default_str();
  verdict_cmd->add_option("--sample", v_sample, "Training set file; default: a Toy draw");
  verdict_cmd->add_option("--m", v_m)->check(CLI::PositiveNumber)->capture_default_str();
  verdict_cmd->add_option("--q", v_q)->check(RationalText)->capture_default_str();
  verdict_cmd->add_option("--required-size", v_required, "Override max(m_u, m_pac)");
  verdict_cmd->add_flag("--strict", v_strict, "Confidence 1 - 2 delta (union bound)");
  c_v.attach(*verdict_cmd);

  // report
  Common c_rep;
  std::string rep_eps = "0.1", rep_delta = "0.05", rep_catalog, rep_rule = "fixed", rep_formula = "log-augmented",
              rep_constant;
  std::uint64_t rep_d = 5;
  auto* report = app.add_subcommand("report", "Dataset sizes versus saturation points");
  report->add_option("--catalog", rep_catalog, "Catalog CSV (default: $PACLAB_CATALOG, else built-in)");
  report->add_option("--eps", rep_eps)->check(RationalText)->capture_default_str();
  report->add_option("--delta", rep_delta)->check(RationalText)->capture_default_str();
  report->add_option("--d", rep_d, "Assumed VC dimension for --vc-rule fixed")->capture_default_str();
  report->add_option("--vc-rule", rep_rule)->check(CLI::IsMember({"fixed", "features"}))->capture_default_str();
  report->add_option("--formula", rep_formula)->check(CLI::IsMember({"simple", "log-augmented"}))->capture_default_str();
  report->add_option("--constant", rep_constant)->check(RationalText);
  c_rep.attach(*report);

  // table2
  Common c_t2;
  std::string t2_constant;
  auto* table2 = app.add_subcommand("table2", "Calibrated reproduction of the published saturation estimates");
  table2->add_option("--constant", t2_constant)->check(RationalText);
  c_t2.attach(*table2);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 2;
  }

  auto constant_or_default = [](const std::string& s) { return s.empty() ? calibrated_constant() : parse_rational(s); };

  try {
    if (statement1->parsed()) {
      ToySettings s{s1_m, parse_rational(s1_q), parse_rational(s1_eps)};
      s.validate();
      auto g = success_probability_exact(s, SuccessCriterion::flip_fraction);
      auto e = success_probability_exact(s, SuccessCriterion::exact_error);
      auto k_max = max_flips_within_error(s);
      std::uint64_t t = flip_threshold(s);
      bool below = g.value() < Rational(4, 5);
      if (c_s1.csv()) {
        out << "quantity,decimal,exact\n";
        out << "G," << g.decimal() << ',' << g.str() << '\n';
        out << "exact_error_success," << e.decimal() << ',' << e.str() << '\n';
        return 0;
      }
      out << "Toy settings: m = " << s.m << ", q = " << s.q.get_str() << ", eps = " << s.epsilon.get_str() << '\n';
      out << "flipped-point threshold floor(eps m) = " << t << '\n';
      out << "G = P(at most " << t << " flipped points) = " << g.decimal() << '\n';
      out << "G rounded to 2 decimals = " << to_fixed(g.value(), 2) << '\n';
      out << "G exact = " << g.str() << '\n';
      out << "G < 4/5: " << (below ? "yes" : "no") << '\n';
      out << (below ? "conclusion: the trivial learner succeeds with probability below 80%, so it fails on at least 20% "
                      "of training sets\n"
                    : "conclusion: success probability is at least 80% at these settings\n");
      out << "exact-error criterion: k_max = " << (k_max ? std::to_string(*k_max) : std::string("none (eps < q)"))
          << ", P(L_D <= eps) = " << show(e.value(), c_s1.exact) << '\n';
      return 0;
    }

    if (toy->parsed()) {
      ToySettings s{toy_m, parse_rational(toy_q), parse_rational(toy_eps)};
      s.validate();
      std::vector<SuccessCriterion> crits;
      if (toy_criterion != "exact-error") crits.push_back(SuccessCriterion::flip_fraction);
      if (toy_criterion != "flip-fraction") crits.push_back(SuccessCriterion::exact_error);
      std::optional<ToyExperimentResult> mc;
      if (toy_trials > 0) {
        std::vector<Label> zeros(s.m, 0);
        MonteCarloOptions opt{toy_trials, c_toy.seed, c_toy.threads};
        if (toy_learner == "perturbing") {
          if (toy_flips > s.m) throw domain_error("--flips exceeds m");
          mc = run_toy_experiment(s, zeros, PerturbingLearner{toy_flips}, opt);
        } else {
          mc = run_toy_experiment(s, zeros, TrivialLearner{}, opt);
        }
      }
      auto name = [](SuccessCriterion c) { return c == SuccessCriterion::flip_fraction ? "flip-fraction" : "exact-error"; };
      if (c_toy.csv()) {
        out << "criterion,exact,exact_rational,mc_estimate,standard_error,trials\n";
        for (auto c : crits) {
          auto ex = success_probability_exact(s, c);
          out << name(c) << ',' << ex.decimal() << ',' << ex.str();
          if (mc) {
            const McEstimate& est = c == SuccessCriterion::flip_fraction ? mc->flip_fraction : mc->exact_error;
            out << ',' << fixed6(est.estimate()) << ',' << fixed6(est.standard_error()) << ',' << est.trials;
          } else {
            out << ",,,0";
          }
          out << '\n';
        }
        return 0;
      }
      out << "Toy settings: m = " << s.m << ", q = " << s.q.get_str() << ", eps = " << s.epsilon.get_str() << '\n';
      out << "exact values are for the trivial learner\n";
      for (auto c : crits) {
        auto ex = success_probability_exact(s, c);
        out << name(c) << ": exact = " << show(ex.value(), c_toy.exact);
        if (c == SuccessCriterion::flip_fraction) out << "  [at most " << flip_threshold(s) << " flipped points]";
        else {
          auto k = max_flips_within_error(s);
          out << "  [k_max = " << (k ? std::to_string(*k) : std::string("none")) << "]";
        }
        out << '\n';
        if (mc) {
          const McEstimate& est = c == SuccessCriterion::flip_fraction ? mc->flip_fraction : mc->exact_error;
          out << "  monte carlo (" << toy_learner << ", " << est.trials << " trials, seed " << c_toy.seed
              << "): " << fixed6(est.estimate()) << " +/- " << fixed6(est.standard_error()) << '\n';
        }
      }
      if (mc) {
        out << "mean L_D of learner hypothesis = " << fixed6(mc->error.mean().get_d()) << " +/- "
            << fixed6(mc->error.standard_error()) << '\n';
      }
      return 0;
    }

    if (saturation->parsed()) {
      ComplexityQuery q{parse_rational(sat_eps), parse_rational(sat_delta), sat_d, parse_formula(sat_formula),
                        constant_or_default(sat_constant)};
      std::uint64_t m = saturation_point(q);
      if (c_sat.csv()) {
        out << "eps,delta,d,formula,constant,m_H\n";
        out << to_plain(q.epsilon) << ',' << to_plain(q.delta) << ',' << q.vc_dim << ',' << formula_name(q.formula)
            << ',' << to_plain(q.constant) << ',' << m << '\n';
        return 0;
      }
      out << "m_H(eps = " << to_plain(q.epsilon) << ", delta = " << to_plain(q.delta)
          << ", d = " << q.vc_dim << ") = " << m << '\n';
      out << formula_note(q.formula, q.constant) << '\n';
      return 0;
    }

    if (uc->parsed()) {
      ToySettings s{uc_m, parse_rational(uc_q), Rational(1, 2)};
      s.validate();
      auto dist = make_toy_distribution(s);
      auto H = make_class(uc_class, dist.points());
      Rational eps = parse_rational(uc_eps);
      UcSampling sampling{!uc_size.has_value(), uc_size};
      TrainingSetSampler sampler(dist, sampling.toy_mode, sampling.size);
      LabeledSample sample = sampler.draw(stream_seed(c_uc.seed, 0));
      auto gap = uc_sup_gap(H, sample, dist);
      std::optional<McEstimate> est;
      if (uc_trials > 0) est = uc_probability_mc(H, dist, sampling, eps, {uc_trials, c_uc.seed, c_uc.threads});
      if (c_uc.csv()) {
        out << "sample_gap,sample_gap_exact,eps,mc_estimate,standard_error,trials\n";
        out << gap.decimal() << ',' << gap.str() << ',' << to_plain(eps) << ',';
        if (est) out << fixed6(est->estimate()) << ',' << fixed6(est->standard_error()) << ',' << est->trials << '\n';
        else out << ",,0\n";
        return 0;
      }
      out << "Toy distribution: m = " << s.m << ", q = " << s.q.get_str() << "; class: " << uc_class << '\n';
      out << "sup_h |L_S(h) - L_D(h)| on the sample drawn with seed " << c_uc.seed << " = " << show(gap.value(), c_uc.exact)
          << '\n';
      if (est)
        out << "P(sup gap <= " << to_plain(eps) << ") ~ " << fixed6(est->estimate()) << " +/- "
            << fixed6(est->standard_error()) << " (" << est->trials << " trials)\n";
      return 0;
    }

    if (erm_cmd->parsed()) {
      LabeledSample sample;
      if (!erm_sample.empty()) {
        sample = read_sample(erm_sample);
      } else {
        ToySettings s{erm_m, parse_rational(erm_q), Rational(1, 2)};
        s.validate();
        sample = sample_training_set(make_toy_distribution(s), true, c_erm.seed);
      }
      std::vector<double> pts;
      for (const auto& p : sample.pairs) pts.push_back(p.x);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      auto H = make_class(erm_class, pts);
      auto r = erm(H, sample);
      if (c_erm.csv()) {
        out << "hypothesis,candidate_index,errors,sample_size,risk\n";
        out << r.hypothesis.describe() << ',' << r.candidate_index << ',' << r.risk.errors << ',' << r.risk.sample_size
            << ',' << r.risk.value().get_str() << '\n';
        return 0;
      }
      out << "sample size = " << sample.size() << '\n';
      out << "ERM hypothesis: " << r.hypothesis.describe() << " (candidate " << r.candidate_index << ")\n";
      out << "empirical risk = " << r.risk.errors << "/" << r.risk.sample_size << " = " << show(r.risk.value(), c_erm.exact)
          << '\n';
      if (erm_vc_cap) {
        auto vc = vc_dimension_bruteforce(H, pts, std::min<std::size_t>(*erm_vc_cap, pts.size()));
        out << "VC dimension on the sample points = " << (vc.at_least ? ">= " : "") << vc.value << '\n';
      }
      return 0;
    }

    if (verdict_cmd->parsed()) {
      Rational eps = parse_rational(v_eps), delta = parse_rational(v_delta);
      LabeledSample sample;
      if (!v_sample.empty()) {
        sample = read_sample(v_sample);
      } else {
        ToySettings s{v_m, parse_rational(v_q), Rational(1, 2)};
        s.validate();
        sample = sample_training_set(make_toy_distribution(s), true, c_v.seed);
      }
      std::vector<double> pts;
      for (const auto& p : sample.pairs) pts.push_back(p.x);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      auto H = make_class(v_class, pts);
      std::uint64_t d = 0;
      if (v_d) d = *v_d;
      else if (H.declared_vc_dim()) d = *H.declared_vc_dim();
      else d = vc_dimension_bruteforce(H, H.domain(), std::min<std::size_t>(H.domain().size(), max_shatter_points)).value;
      auto [qu, qp] = verdict_queries(eps, delta, d, parse_formula(v_formula), constant_or_default(v_constant));
      VerdictOptions vo{v_strict, v_required};
      Verdict v = verdict(eps, delta, sample, H, qu, qp, vo);
      if (c_v.csv()) {
        out << "outcome,sample_size,required_size,erm_risk,confidence\n";
        out << to_string(v.outcome) << ',' << sample.size() << ',' << v.required_size << ','
            << (v.erm_risk ? v.erm_risk->value().get_str() : std::string()) << ',' << v.confidence.get_str() << '\n';
        return 0;
      }
      out << "|S| = " << sample.size() << ", required |S| > " << v.required_size
          << (v_required ? " (overridden)" : " = max(m_u(eps/2, delta), m_pac(eps/2, delta)), d = " + std::to_string(d))
          << '\n';
      out << "outcome: " << to_string(v.outcome) << '\n';
      if (v.erm_risk) {
        out << "ERM hypothesis: " << v.hypothesis->describe() << '\n';
        out << "empirical risk = " << show(v.erm_risk->value(), c_v.exact) << " (eps/2 = " << to_plain(eps / 2)
            << ", 2 eps = " << to_plain(2 * eps) << ")\n";
      }
      if (v.outcome == Outcome::solved || v.outcome == Outcome::no_solution_in_class)
        out << "confidence: " << show(v.confidence, c_v.exact) << (v_strict ? " (strict)" : "") << '\n';
      return 0;
    }

    if (report->parsed()) {
      auto catalog = resolve_catalog(rep_catalog);
      VcRule rule = rep_rule == "features" ? VcRule::from_features() : VcRule::fixed(rep_d);
      Rational eps = parse_rational(rep_eps), delta = parse_rational(rep_delta);
      Rational constant = constant_or_default(rep_constant);
      auto rows = feasibility_report(catalog, eps, delta, rule, parse_formula(rep_formula), constant);
      if (c_rep.csv()) {
        out << render_report_csv(rows);
        return 0;
      }
      std::size_t infeasible = 0;
      for (const auto& r : rows) infeasible += !r.feasible;
      out << "eps = " << to_plain(eps) << ", delta = " << to_plain(delta) << ", " << rule.describe()
          << " (an assumption: VC dimension is not recoverable from dataset metadata)\n";
      out << formula_note(parse_formula(rep_formula), constant) << '\n';
      out << render_report_text(rows);
      out << "infeasible: " << infeasible << " of " << rows.size() << " datasets\n";
      return 0;
    }

    if (table2->parsed()) {
      Rational constant = constant_or_default(t2_constant);
      if (c_t2.csv()) out << "eps,delta,d,published,reproduced,relative_error,note\n";
      else {
        out << formula_note(BoundFormula::log_augmented, constant) << '\n';
        out << std::left << std::setw(6) << "eps" << std::setw(7) << "delta" << std::setw(4) << "d" << std::right
            << std::setw(12) << "published" << std::setw(12) << "reproduced" << std::setw(11) << "rel.err"
            << "  note\n";
      }
      for (const auto& cell : published_cells) {
        ComplexityQuery q{parse_rational(cell.eps), parse_rational(cell.delta), cell.d, BoundFormula::log_augmented,
                          constant};
        std::uint64_t m = saturation_point(q);
        double rel = (static_cast<double>(m) - static_cast<double>(cell.value)) / static_cast<double>(cell.value);
        std::ostringstream rels;
        rels << std::showpos << std::fixed << std::setprecision(2) << rel * 100 << "%";
        const char* note = cell.excluded ? "suspected typo, excluded" : "";
        if (c_t2.csv()) {
          out << cell.eps << ',' << cell.delta << ',' << cell.d << ',' << cell.value << ',' << m << ','
              << fixed6(rel) << ',' << (cell.excluded ? "\"" + std::string(note) + "\"" : std::string()) << '\n';
        } else {
          out << std::left << std::setw(6) << cell.eps << std::setw(7) << cell.delta << std::setw(4) << cell.d
              << std::right << std::setw(12) << cell.value << std::setw(12) << m << std::setw(11) << rels.str()
              << (cell.excluded ? std::string("  ") + note : std::string()) << '\n';
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace paclab::cli
