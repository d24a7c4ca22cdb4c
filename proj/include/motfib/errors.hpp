#pragma once

#include <stdexcept>
#include <string>

namespace motfib {

// Every failure the library can report deliberately.  `kind` names are stable
// strings used in CLI error output; `exit_class` groups them for process exit
// codes (2 = bad input / unsupported domain, 3 = internal or verification).
enum class ErrKind {
  SyntaxError,
  UnknownVariable,
  DegreeBoundExceeded,
  NonRationalCenter,
  IrrationalCenter,
  NotAGerm,
  NoPresentation,
  UnsupportedShape,
  UnitVanishesOnStratum,
  GridDegeneracy,
  NotIsolated,
  InvalidCenter,
  InternalError,
};

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::SyntaxError: return "SyntaxError";
    case ErrKind::UnknownVariable: return "UnknownVariable";
    case ErrKind::DegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrKind::NonRationalCenter: return "NonRationalCenter";
    case ErrKind::IrrationalCenter: return "IrrationalCenter";
    case ErrKind::NotAGerm: return "NotAGerm";
    case ErrKind::NoPresentation: return "NoPresentation";
    case ErrKind::UnsupportedShape: return "UnsupportedShape";
    case ErrKind::UnitVanishesOnStratum: return "UnitVanishesOnStratum";
    case ErrKind::GridDegeneracy: return "GridDegeneracy";
    case ErrKind::NotIsolated: return "NotIsolated";
    case ErrKind::InvalidCenter: return "InvalidCenter";
    case ErrKind::InternalError: return "InternalError";
  }
  return "InternalError";
}

inline int err_exit_class(ErrKind k) {
  switch (k) {
    case ErrKind::InternalError:
      return 3;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, std::string where, std::string detail)
      : std::runtime_error(std::string(err_kind_name(kind)) + " at " + where +
                           ": " + detail),
        kind_(kind),
        where_(std::move(where)),
        detail_(std::move(detail)) {}

  ErrKind kind() const { return kind_; }
  const std::string& where() const { return where_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrKind kind_;
  std::string where_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& where,
                              const std::string& detail) {
  throw Error(kind, where, detail);
}

}  // namespace motfib
