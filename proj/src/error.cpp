#include "kpos/error.hpp"

namespace kpos {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedPD: return "MalformedPD";
    case Errc::ArcMultiplicity: return "ArcMultiplicity";
    case Errc::ArityError: return "ArityError";
    case Errc::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case Errc::ZeroLetter: return "ZeroLetter";
    case Errc::MalformedBraid: return "MalformedBraid";
    case Errc::OrientationInconsistent: return "OrientationInconsistent";
    case Errc::MalformedPolynomial: return "MalformedPolynomial";
    case Errc::MixedParity: return "MixedParity";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotPositiveDiagram: return "NotPositiveDiagram";
    case Errc::RecursionBudgetExceeded: return "RecursionBudgetExceeded";
    case Errc::CrossingCapExceeded: return "CrossingCapExceeded";
    case Errc::EmptyHomology: return "EmptyHomology";
    case Errc::MalformedKhPolynomial: return "MalformedKhPolynomial";
    case Errc::UnsupportedTorsionExponent: return "UnsupportedTorsionExponent";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::FileUnreadable: return "FileUnreadable";
    case Errc::ColumnMissing: return "ColumnMissing";
    case Errc::CellParseError: return "CellParseError";
    case Errc::InvariantMismatch: return "InvariantMismatch";
  }
  return "Unknown";
}

}  // namespace kpos
