#pragma once

#include <stdexcept>
#include <string>

namespace qmhs {

enum class Errc {
  NonInvertible,
  BothZero,
  NotInH1,
  NotInH0,
  EmptyIndex,
  HasBarEntry,
  BadEntry,
  OrderMismatch,
  BadConstantTerm,
  NotInMzvH1,
  NotInI0hat,
  Divergent,
  ZeroDivision,
  OutOfRange,
  BadDenominator,
  PreconditionViolated,
  ParseError,
  CeilingExceeded,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NonInvertible: return "NonInvertible";
    case Errc::BothZero: return "BothZero";
    case Errc::NotInH1: return "NotInH1";
    case Errc::NotInH0: return "NotInH0";
    case Errc::EmptyIndex: return "EmptyIndex";
    case Errc::HasBarEntry: return "HasBarEntry";
    case Errc::BadEntry: return "BadEntry";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::BadConstantTerm: return "BadConstantTerm";
    case Errc::NotInMzvH1: return "NotInMzvH1";
    case Errc::NotInI0hat: return "NotInI0hat";
    case Errc::Divergent: return "Divergent";
    case Errc::ZeroDivision: return "ZeroDivision";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadDenominator: return "BadDenominator";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::ParseError: return "ParseError";
    case Errc::CeilingExceeded: return "CeilingExceeded";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qmhs
