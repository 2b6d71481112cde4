#pragma once

#include <stdexcept>
#include <string>

namespace csst {

enum class Errc {
  InvalidPoint,
  LeafInCutSet,
  NotASuperset,
  BudgetExceeded,
  NotWordAddressed,
  EmptyLevel,
  BudgetTooShallow,
  DegenerateMetric,
  NotAnExcursion,
  NotEdgeLike,
  MarkNotInLeafTile,
  NotTrivalent,
  PreconditionNotVerified,
  DepthExceeded,
  NoFeasibleDelta,
  InvalidInput,
  Io,
  Schema,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::LeafInCutSet: return "LeafInCutSet";
    case Errc::NotASuperset: return "NotASuperset";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotWordAddressed: return "NotWordAddressed";
    case Errc::EmptyLevel: return "EmptyLevel";
    case Errc::BudgetTooShallow: return "BudgetTooShallow";
    case Errc::DegenerateMetric: return "DegenerateMetric";
    case Errc::NotAnExcursion: return "NotAnExcursion";
    case Errc::NotEdgeLike: return "NotEdgeLike";
    case Errc::MarkNotInLeafTile: return "MarkNotInLeafTile";
    case Errc::NotTrivalent: return "NotTrivalent";
    case Errc::PreconditionNotVerified: return "PreconditionNotVerified";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::NoFeasibleDelta: return "NoFeasibleDelta";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::Io: return "Io";
    case Errc::Schema: return "Schema";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace csst
