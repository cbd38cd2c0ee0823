#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sylow {

enum class Errc {
  InvalidPrime,
  OutOfRange,
  InvalidArgument,
  DegenerateT,
  ZeroClass,
  TooLarge,
  NoSecondPoint,
  NoUnitCombination,
  TheoremViolation,
  PrimePowerBlocked,
  TwiceOddPrimePowerBlocked,
  HypothesesFail,
  DimMismatch,
  InvalidSpec,
  NotUnit,
  NoAction,
  NoConvergence,
  NotEquivariant,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace sylow
