#pragma once

#include <stdexcept>
#include <string>

namespace glassey {

/// Failure categories shared by every module. The CLI maps them onto exit codes.
enum class ErrorKind {
  precondition,   // bad parameters or inputs
  non_finite,     // NaN/inf found in an input field
  horizon,        // trajectory does not cover the requested horizon
  degenerate,     // zero input where a ratio is requested
  non_integrable, // weighted norm diverges on the sample
  range,          // evaluation outside an interpolant's domain
  support,        // data does not vanish before the outer boundary
  step_underflow, // time step collapsed
  divergence,     // iteration grows instead of contracting
  insufficient_data,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define GLASSEY_DEFINE_ERROR(Name, Kind)                                 \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

GLASSEY_DEFINE_ERROR(PreconditionViolation, precondition)
GLASSEY_DEFINE_ERROR(NonFiniteInput, non_finite)
GLASSEY_DEFINE_ERROR(HorizonMismatch, horizon)
GLASSEY_DEFINE_ERROR(DegenerateInput, degenerate)
GLASSEY_DEFINE_ERROR(NonIntegrable, non_integrable)
GLASSEY_DEFINE_ERROR(RangeViolation, range)
GLASSEY_DEFINE_ERROR(SupportOverflow, support)
GLASSEY_DEFINE_ERROR(StepUnderflow, step_underflow)
GLASSEY_DEFINE_ERROR(Divergence, divergence)
GLASSEY_DEFINE_ERROR(InsufficientData, insufficient_data)
GLASSEY_DEFINE_ERROR(IoError, io)

#undef GLASSEY_DEFINE_ERROR

inline void require(bool condition, const std::string& what) {
  if (!condition) throw PreconditionViolation(what);
}

}  // namespace glassey
