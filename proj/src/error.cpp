#include "kreinfock/error.hpp"

namespace kreinfock {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonSquare: return "NonSquare";
    case ErrorKind::kNotSelfadjoint: return "NotSelfadjoint";
    case ErrorKind::kNotInvolutive: return "NotInvolutive";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kMetricInvalid: return "MetricInvalid";
    case ErrorKind::kSizeOverflow: return "SizeOverflow";
    case ErrorKind::kNotUnitary: return "NotUnitary";
    case ErrorKind::kBasisMismatch: return "BasisMismatch";
    case ErrorKind::kCutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::kUnknownModel: return "UnknownModel";
    case ErrorKind::kBadParams: return "BadParams";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kSchemaError: return "SchemaError";
    case ErrorKind::kConfigInvalid: return "ConfigInvalid";
    case ErrorKind::kModelBuildFailed: return "ModelBuildFailed";
  }
  return "Unknown";
}

}  // namespace kreinfock
