#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conicwalk {

enum class Errc {
  NotOddPrime,
  CapExceeded,
  InvalidArgument,
  NotIrreducible,
  DivisionByZero,
  FieldMismatch,
  InvalidConic,
  ZeroQuadranceArg,
  IndexInvalid,
  IndexMismatch,
  NotErgodic,
  Timeout,
  BranchMismatch,
  ArithmeticOverflow,
  InternalAssertion,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace conicwalk
