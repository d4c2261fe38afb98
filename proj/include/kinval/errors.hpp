#pragma once

#include <stdexcept>
#include <string>

namespace kinval {

/// Failure categories raised by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  InvalidRegion,
  NonTransverse,
  NonGeneric,
  InteriorPoint,
  OutsideRegion,
  QuadratureFailure,
  NotMorse,
  CriticalValue,
  NonVertical,
  SceneError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kinval
