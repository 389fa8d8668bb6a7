#ifndef REALSTACK_ERROR_HPP
#define REALSTACK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace realstack {

enum class Errc {
  NotClosed,
  NoIdentityAtZero,
  NotAssociative,
  NoInverse,
  SizeLimitExceeded,
  NotAbelian,
  NotACocycle,
  NotEquivariant,
  NegativeResult,
  NotAbelianStabilizer,
  NotFaithful,
  Unsupported,
  LoopNotEquivariant,
  OmegaNotCocycle,
  SurfaceRelationBroken,
  MissingTableEntry,
  OpenCurveUnsupported,
  Malformed,
  InvariantViolated,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace realstack

#endif
