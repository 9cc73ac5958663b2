#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rfm {

enum class ErrorKind {
  Structural,
  InvariantUnavailable,
  Validation,
  Hypothesis,
  Site,
  NotSeparable,
  SiteExhaustion,
  Argument,
  Scope,
  NoConstruction,
  UnknownPreset,
  TraceRequired,
  Mismatch,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` lets
/// callers (and the CLI exit-code mapping) tell the categories apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rfm
