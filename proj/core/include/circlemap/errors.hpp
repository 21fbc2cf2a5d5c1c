#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace circlemap {

// Every domain failure is reported as a subclass of Error. code() is the
// stable machine-readable name the CLI puts into its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define CIRCLEMAP_SIMPLE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

CIRCLEMAP_SIMPLE_ERROR(InvalidArgument)
CIRCLEMAP_SIMPLE_ERROR(NonMonotoneMap)
CIRCLEMAP_SIMPLE_ERROR(AmbiguousClass)
CIRCLEMAP_SIMPLE_ERROR(BracketFailure)
CIRCLEMAP_SIMPLE_ERROR(NewtonDivergence)
CIRCLEMAP_SIMPLE_ERROR(DegenerateTip)
CIRCLEMAP_SIMPLE_ERROR(CoverFailure)
CIRCLEMAP_SIMPLE_ERROR(WrongBranch)
CIRCLEMAP_SIMPLE_ERROR(InsufficientLevels)
CIRCLEMAP_SIMPLE_ERROR(HypothesisViolated)
CIRCLEMAP_SIMPLE_ERROR(ExtraPreimage)
CIRCLEMAP_SIMPLE_ERROR(NotCritical)
CIRCLEMAP_SIMPLE_ERROR(RootFindingFailure)
CIRCLEMAP_SIMPLE_ERROR(BranchAmbiguity)
CIRCLEMAP_SIMPLE_ERROR(DegenerateNodes)
CIRCLEMAP_SIMPLE_ERROR(InconclusiveReport)

#undef CIRCLEMAP_SIMPLE_ERROR

// The Gauss orbit fell below the rational-detection threshold at step k.
class RationalDetected : public Error {
 public:
  explicit RationalDetected(int step)
      : Error("RationalDetected",
              "orbit reached a rational at step " + std::to_string(step)),
        step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

// The rotation number is certified to equal p/q.
class RationalRotation : public Error {
 public:
  RationalRotation(std::int64_t p, std::int64_t q)
      : Error("RationalRotation", "rotation number is exactly " +
                                      std::to_string(p) + "/" +
                                      std::to_string(q)),
        p_(p),
        q_(q) {}
  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }

 private:
  std::int64_t p_, q_;
};

class NoConvergence : public Error {
 public:
  NoConvergence(double residual, const std::string& what)
      : Error("NoConvergence", what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class HitCriticalOrbit : public Error {
 public:
  explicit HitCriticalOrbit(long step)
      : Error("HitCriticalOrbit", "orbit lands on the critical point at step " +
                                      std::to_string(step)),
        step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class PeriodicOrbit : public Error {
 public:
  explicit PeriodicOrbit(std::int64_t q)
      : Error("PeriodicOrbit",
              "orbit of 0 returns to 0 at time " + std::to_string(q)),
        q_(q) {}
  std::int64_t q() const noexcept { return q_; }

 private:
  std::int64_t q_;
};

class CommutationFailure : public Error {
 public:
  explicit CommutationFailure(double defect)
      : Error("CommutationFailure",
              "H_a o G does not commute with the unit translation (defect " +
                  std::to_string(defect) + ")"),
        defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

}  // namespace circlemap
