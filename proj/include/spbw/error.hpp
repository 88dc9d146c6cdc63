#pragma once

// Error codes shared by the whole library.  Every throwing operation uses
// Error with a code from Errc; parse-time errors additionally carry a
// source position (1-based line/column) or a document path.

#include <optional>
#include <stdexcept>
#include <string>

namespace spbw {

enum class Errc {
  // arithmetic / containers
  MismatchedRing,
  MismatchedArity,
  NotEnumerable,
  ZeroPolynomial,
  ZeroCoefficient,
  ZeroInput,
  BadIndex,
  // map and spec validation
  IncompleteMap,
  InvalidMap,
  ZeroConstant,
  CardinalityTooLarge,
  NotQuasiCommutative,
  NotInner,
  NotDerivationType,
  // ideals
  ImproperIdeal,
  NotInvariant,
  NotSigmaInvariant,
  NotStable,
  HypothesisFailed,
  // catalog
  UnknownEntry,
  BadParams,
  // parsing
  SyntaxError,
  UnknownVariable,
  BadCoefficientForRing,
  BadDocument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MismatchedRing: return "MismatchedRing";
    case Errc::MismatchedArity: return "MismatchedArity";
    case Errc::NotEnumerable: return "NotEnumerable";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::BadIndex: return "BadIndex";
    case Errc::IncompleteMap: return "IncompleteMap";
    case Errc::InvalidMap: return "InvalidMap";
    case Errc::ZeroConstant: return "ZeroConstant";
    case Errc::CardinalityTooLarge: return "CardinalityTooLarge";
    case Errc::NotQuasiCommutative: return "NotQuasiCommutative";
    case Errc::NotInner: return "NotInner";
    case Errc::NotDerivationType: return "NotDerivationType";
    case Errc::ImproperIdeal: return "ImproperIdeal";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NotSigmaInvariant: return "NotSigmaInvariant";
    case Errc::NotStable: return "NotStable";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::UnknownEntry: return "UnknownEntry";
    case Errc::BadParams: return "BadParams";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::BadCoefficientForRing: return "BadCoefficientForRing";
    case Errc::BadDocument: return "BadDocument";
  }
  return "Unknown";
}

struct SourcePos {
  int line = 0;  // 1-based
  int column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Error(Errc code, std::string message, SourcePos pos)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message +
                           " at " + std::to_string(pos.line) + ":" +
                           std::to_string(pos.column)),
        code_(code),
        pos_(pos) {}

  Errc code() const { return code_; }
  const std::optional<SourcePos>& pos() const { return pos_; }

  // Exit-code category used by the command-line tool: parse errors are 2,
  // operations a ring cannot support are 3, any other failure is 1.
  int exit_category() const {
    switch (code_) {
      case Errc::SyntaxError:
      case Errc::UnknownVariable:
      case Errc::BadCoefficientForRing:
      case Errc::BadDocument:
        return 2;
      case Errc::NotEnumerable:
        return 3;
      default:
        return 1;
    }
  }

 private:
  Errc code_;
  std::optional<SourcePos> pos_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

[[noreturn]] inline void fail_at(Errc code, const std::string& message, SourcePos pos) {
  throw Error(code, message, pos);
}

}  // namespace spbw
