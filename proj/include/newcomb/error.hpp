#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace newcomb {

enum class Errc {
  NotNormalized,
  NegativeMass,
  UnknownOutcome,
  UnsupportedArity,
  SpaceMismatch,
  ProfileMismatch,
  UnknownVariable,
  ShapeMismatch,
  IncompleteFixed,
  VariableMismatch,
  OutOfRange,
  InvalidProfile,
  InvalidNet,
  NoPayoff,
  Parse,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace newcomb
