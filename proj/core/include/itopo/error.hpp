#pragma once

#include <stdexcept>
#include <string>

namespace itopo {

enum class Errc {
  DuplicateEdge,
  SelfLoop,
  OverlayDegreeViolation,
  Disconnected,
  Unreachable,
  SimulationHorizonTooShort,
  DegenerateRegressor,
  BudgetExceeded,
  BudgetTooSmall,
  Infeasible,
  TimeBudgetExceeded,
  IndexMismatch,
  NotATree,
  NotARing,
  TooFewOverlays,
  DegenerateSample,
  IoError,
};

const char* errc_name(Errc c);

// All failures raised by the library carry one of the codes above, so callers
// can branch on code() instead of parsing what() strings.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace itopo
