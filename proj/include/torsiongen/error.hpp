#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torsiongen
{

enum class Errc
{
  MalformedCycle,
  PointOutOfRange,
  RepeatedPoint,
  DegreeMismatch,
  EmptyGeneratorList,
  InvalidParams,
  OverlapError,
  RangeError,
  OddK,
  SearchExhausted,
  CaseUndefined,
  InvalidDecomposition,
  ZeroVector,
  TooLarge,
  UnsupportedK,
  PlusOneUnsupported,
  MissingLanternData,
  HypothesisFailure,
  RewriteStepInvalid,
  InvalidSampler,
  TrialsZero,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on the kind.
class Error : public std::runtime_error
{
public:
  Error(Errc code, std::string const &what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), _code(code)
  {}

  Errc code() const noexcept { return _code; }

private:
  Errc _code;
};

} // namespace torsiongen
