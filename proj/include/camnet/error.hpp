#pragma once

#include <stdexcept>
#include <string>

namespace camnet {

enum class ErrorCode {
  InvalidArgument,
  DegenerateGeometry,
  BehindCamera,
  SingularDistortion,
  NonpositiveQuality,
  NotVisible,
  GridTooLarge,
  Parse,
};

/// Single exception type for the library; `code()` lets callers branch
/// without matching on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace camnet
