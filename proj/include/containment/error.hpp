#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace containment {

enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  SelfLoop,
  LeaderReceivesEdge,
  SingularL1,
  InvalidModel,
  DegenerateFormation,
  DegenerateEdge,
  ZeroDistance,
  InconsistentView,
  NonFiniteState,
  ValidationFailed,
  NonPositiveValue,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace containment
