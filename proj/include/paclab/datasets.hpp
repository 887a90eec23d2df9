#pragma once

// Dataset-size catalogs and their comparison against saturation points.

#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "paclab/complexity.hpp"
#include "paclab/errors.hpp"

namespace paclab {

struct DatasetEntry {
  std::string name;
  std::uint64_t features = 1;
  std::uint64_t records = 1;
  std::uint64_t classes = 2;

  friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

inline constexpr std::string_view catalog_header = "name,features,records,classes";

// Six popular UCI classification problems with at most four classes.
inline constexpr std::string_view default_catalog_csv =
    "name,features,records,classes\n"
    "Iris,4,150,3\n"
    "Adult,14,48842,2\n"
    "Car Evaluation,6,1728,4\n"
    "Breast Cancer,32,569,2\n"
    "Heart Disease,75,303,2\n"
    "Bank Marketing,20,41188,2\n";

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::uint64_t parse_count(const std::string& field, std::size_t line, const char* what) {
  if (field.empty()) throw parse_error(line, std::string("missing ") + what);
  bool negative = field[0] == '-';
  std::string_view digits = negative ? std::string_view(field).substr(1) : std::string_view(field);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    throw parse_error(line, std::string(what) + " is not an integer: '" + field + "'");
  if (negative) throw validation_error("line " + std::to_string(line) + ": " + what + " must be positive");
  try {
    return std::stoull(std::string(digits));
  } catch (const std::out_of_range&) {
    throw parse_error(line, std::string(what) + " out of range: '" + field + "'");
  }
}

}  // namespace detail

// CSV with header `name,features,records,classes`. Blank lines are skipped.
inline std::vector<DatasetEntry> load_catalog(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (!detail::trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw parse_error(1, "missing header");
  {
    auto cols = detail::split_csv_row(line);
    std::string joined;
    for (std::size_t i = 0; i < cols.size(); ++i) joined += (i ? "," : "") + cols[i];
    if (joined != catalog_header) throw parse_error(lineno, "expected header '" + std::string(catalog_header) + "'");
  }
  std::vector<DatasetEntry> out;
  while (next_line()) {
    auto cols = detail::split_csv_row(line);
    if (cols.size() != 4) throw parse_error(lineno, "expected 4 fields, found " + std::to_string(cols.size()));
    if (cols[0].empty()) throw parse_error(lineno, "empty dataset name");
    DatasetEntry e{cols[0], detail::parse_count(cols[1], lineno, "features"),
                   detail::parse_count(cols[2], lineno, "records"), detail::parse_count(cols[3], lineno, "classes")};
    if (e.features < 1) throw validation_error("line " + std::to_string(lineno) + ": features must be >= 1");
    if (e.records < 1) throw validation_error("line " + std::to_string(lineno) + ": records must be >= 1");
    if (e.classes < 2) throw validation_error("line " + std::to_string(lineno) + ": classes must be >= 2");
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<DatasetEntry> default_catalog() {
  std::istringstream in{std::string(default_catalog_csv)};
  return load_catalog(in);
}

inline std::string serialize_catalog(const std::vector<DatasetEntry>& entries) {
  std::string out(catalog_header);
  out += '\n';
  for (const auto& e : entries)
    out += e.name + "," + std::to_string(e.features) + "," + std::to_string(e.records) + "," +
           std::to_string(e.classes) + "\n";
  return out;
}

// VC dimension is not recoverable from metadata; the report always states which rule was assumed.
struct VcRule {
  enum class Kind { fixed, features } kind = Kind::fixed;
  std::uint64_t d = 5;

  static VcRule fixed(std::uint64_t d) { return {Kind::fixed, d}; }
  static VcRule from_features() { return {Kind::features, 0}; }

  std::uint64_t apply(const DatasetEntry& e) const { return kind == Kind::fixed ? d : e.features; }
  std::string describe() const {
    return kind == Kind::fixed ? "assumed d = " + std::to_string(d) : std::string("assumed d = number of features");
  }
};

struct FeasibilityRow {
  DatasetEntry entry;
  std::uint64_t assumed_d = 0;
  std::uint64_t required = 0;
  double ratio = 0.0;  // records / required
  bool feasible = false;  // records > required
};

inline std::vector<FeasibilityRow> feasibility_report(const std::vector<DatasetEntry>& catalog, const Rational& epsilon,
                                                      const Rational& delta, const VcRule& rule,
                                                      BoundFormula formula = BoundFormula::log_augmented,
                                                      const Rational& constant = calibrated_constant()) {
  std::vector<FeasibilityRow> rows;
  rows.reserve(catalog.size());
  for (const auto& e : catalog) {
    ComplexityQuery q{epsilon, delta, rule.apply(e), formula, constant};
    FeasibilityRow r{e, q.vc_dim, saturation_point(q)};
    r.ratio = static_cast<double>(e.records) / static_cast<double>(r.required);
    r.feasible = e.records > r.required;
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string render_report_csv(const std::vector<FeasibilityRow>& rows) {
  std::ostringstream os;
  os << "name,features,records,classes,assumed_d,required,ratio,feasible\n";
  for (const auto& r : rows)
    os << r.entry.name << ',' << r.entry.features << ',' << r.entry.records << ',' << r.entry.classes << ','
       << r.assumed_d << ',' << r.required << ',' << std::setprecision(6) << r.ratio << ','
       << (r.feasible ? "yes" : "no") << '\n';
  return os.str();
}

inline std::string render_report_text(const std::vector<FeasibilityRow>& rows) {
  std::size_t name_w = 7;
  for (const auto& r : rows) name_w = std::max(name_w, r.entry.name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(name_w)) << "dataset" << std::right << std::setw(10) << "features"
     << std::setw(10) << "records" << std::setw(10) << "assumed d" << std::setw(14) << "required" << std::setw(12)
     << "ratio" << std::setw(10) << "feasible" << '\n';
  for (const auto& r : rows) {
    std::ostringstream ratio;
    ratio << std::setprecision(3) << r.ratio;
    os << std::left << std::setw(static_cast<int>(name_w)) << r.entry.name << std::right << std::setw(10)
       << r.entry.features << std::setw(10) << r.entry.records << std::setw(10) << r.assumed_d << std::setw(14)
       << r.required << std::setw(12) << ratio.str() << std::setw(10) << (r.feasible ? "yes" : "no") << '\n';
  }
  return os.str();
}

}  // namespace paclab
