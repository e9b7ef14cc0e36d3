#pragma once

#include <stdexcept>
#include <string>

namespace bellquench {

enum class ErrorKind {
  InvalidArgument,
  OutOfRange,
  DegenerateGroundState,
  InconsistentCorrelators,
  ThresholdUndefined,
  FitFailed,
  ResourceCap,
  Config,
  Parse,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace bellquench
