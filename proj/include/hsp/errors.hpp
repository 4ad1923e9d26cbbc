#pragma once

#include <stdexcept>
#include <string>

namespace hsp {

// Error taxonomy shared by all modules.  The CLI maps these onto exit
// codes: capability_error -> 2, budget_error -> 3, everything else -> 1.

/// A requested operation is outside the supported engine/group classes.
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// A vertex/element/search budget was exhausted.  Never silent truncation.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// Sources and sinks of a cut computation live in different components.
class disconnected_input_error : public std::runtime_error {
 public:
  explicit disconnected_input_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Scenario files that do not parse; carries a line number.
class scenario_parse_error : public std::runtime_error {
 public:
  scenario_parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Structural invariant violations (bad specs, inconsistent data).
class invalid_input_error : public std::runtime_error {
 public:
  explicit invalid_input_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace hsp
