#pragma once

#include <stdexcept>
#include <string>

namespace ist {

// Bad arguments, malformed config or CLI usage.  Exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: blow-up, window overflow, inversion breakdown.  Exit code 2.
class NumericalError : public std::runtime_error {
 public:
  enum class Kind {
    DivergedPropagation,
    Domain,
    WindowOverflow,
    InversionBreakdown,
    BlowUp,
    Mismatch,
    EdgeDecay,
  };

  NumericalError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A requested tolerance was not met (compare/strict mode).  Exit code 3.
class ToleranceFailure : public std::runtime_error {
 public:
  explicit ToleranceFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ist
