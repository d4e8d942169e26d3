#include "torsiongen/error.hpp"

namespace torsiongen
{

std::string_view errc_name(Errc code) noexcept
{
  switch (code) {
    case Errc::MalformedCycle: return "MalformedCycle";
    case Errc::PointOutOfRange: return "PointOutOfRange";
    case Errc::RepeatedPoint: return "RepeatedPoint";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::EmptyGeneratorList: return "EmptyGeneratorList";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::OverlapError: return "OverlapError";
    case Errc::RangeError: return "RangeError";
    case Errc::OddK: return "OddK";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::CaseUndefined: return "CaseUndefined";
    case Errc::InvalidDecomposition: return "InvalidDecomposition";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnsupportedK: return "UnsupportedK";
    case Errc::PlusOneUnsupported: return "PlusOneUnsupported";
    case Errc::MissingLanternData: return "MissingLanternData";
    case Errc::HypothesisFailure: return "HypothesisFailure";
    case Errc::RewriteStepInvalid: return "RewriteStepInvalid";
    case Errc::InvalidSampler: return "InvalidSampler";
    case Errc::TrialsZero: return "TrialsZero";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

} // namespace torsiongen
