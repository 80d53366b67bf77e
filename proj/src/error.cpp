#include "conicwalk/error.hpp"

namespace conicwalk {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidConic: return "InvalidConic";
    case Errc::ZeroQuadranceArg: return "ZeroQuadranceArg";
    case Errc::IndexInvalid: return "IndexInvalid";
    case Errc::IndexMismatch: return "IndexMismatch";
    case Errc::NotErgodic: return "NotErgodic";
    case Errc::Timeout: return "Timeout";
    case Errc::BranchMismatch: return "BranchMismatch";
    case Errc::ArithmeticOverflow: return "ArithmeticOverflow";
    case Errc::InternalAssertion: return "InternalAssertion";
  }
  return "Unknown";
}

}  // namespace conicwalk
