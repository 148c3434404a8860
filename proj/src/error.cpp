#include "containment/error.hpp"

namespace containment {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::LeaderReceivesEdge: return "LeaderReceivesEdge";
    case ErrorCode::SingularL1: return "SingularL1";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::DegenerateFormation: return "DegenerateFormation";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::ZeroDistance: return "ZeroDistance";
    case ErrorCode::InconsistentView: return "InconsistentView";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace containment
