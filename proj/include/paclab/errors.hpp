#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paclab {

// Precondition on an argument was violated (k > m, q outside [0,1], ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A requested exhaustive enumeration is larger than the library allows.
class resource_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Structurally valid input whose values are out of range (zero record counts, ...).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. Carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace paclab
