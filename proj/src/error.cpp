#include "radcal/error.hpp"

namespace radcal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::NegativeRadius: return "NegativeRadius";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::NoValidRoot: return "NoValidRoot";
    case ErrorCode::DegenerateKnot: return "DegenerateKnot";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::InsufficientViews: return "InsufficientViews";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DivergedObjective: return "DivergedObjective";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace radcal
