#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "torsiongen/constructions.hpp"
#include "torsiongen/curves.hpp"

namespace torsiongen
{

inline constexpr char const *tool_version = "0.1.0";
inline constexpr int report_schema_version = 1;

enum class Outcome
{
  Pass,
  Fail,
  ExpectedFail,
  UnexpectedPass,
  Skip,
};

std::string to_string(Outcome o);

struct CellResult
{
  Family family = Family::Prop61;
  unsigned k = 0;
  unsigned n = 0;
  Outcome outcome = Outcome::Skip;
  std::string classification;
  std::string expected;
  std::vector<unsigned long long> orders;
  std::string case_tag;
  std::string witness_word;
  std::string witness_cycle;
  std::string note;
  double elapsed_ms = 0;

  bool operator==(CellResult const &) const = default;
};

using ParamValue = std::variant<long long, std::string>;

struct Summary
{
  std::size_t total = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t expected_fail = 0;
  std::size_t unexpected_pass = 0;
  std::size_t skip = 0;
};

struct SweepReport
{
  std::string command;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::vector<CellResult> cells;

  Summary summary() const;
};

struct RunOptions
{
  unsigned jobs = 0; // 0: hardware concurrency
  std::optional<std::filesystem::path> cache_dir;
  bool timings = false;
};

/// Cache directory from an explicit flag, else TORSIONGEN_CACHE, else none.
std::optional<std::filesystem::path> resolve_cache_dir(std::optional<std::string> const &flag);

/// Single cell; domain errors (RangeError, CaseUndefined, OddK, ...) propagate.
CellResult run_cell(Family family, unsigned k, unsigned n);

/// (k, n) inside the family's stated domain, before construction.
bool in_domain(Family family, unsigned k, unsigned n);

SweepReport cmd_verify(Family family, unsigned k, unsigned n, RunOptions const &opt = {});

/// Every in-domain (k, n) of the box, ordered by (k, n). Construction errors
/// inside the domain (the case-3 floor) become skipped cells.
SweepReport cmd_sweep(Family family, unsigned k_min, unsigned k_max, unsigned n_min,
                      unsigned n_max, RunOptions const &opt = {});

/// 0 iff every cell matches its expectation.
int exit_code(SweepReport const &r);

enum class Sampler
{
  MaxDisjointKCycles,
  UniformOrderK,
};

std::string to_string(Sampler s);
Sampler sampler_from_string(std::string const &s);

struct EstimatorResult
{
  unsigned k = 0;
  unsigned n = 0;
  Sampler sampler = Sampler::MaxDisjointKCycles;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t seed = 0;

  bool operator==(EstimatorResult const &) const = default;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// A random element of order exactly k on n points.
Permutation sample_order_k(unsigned k, unsigned n, Sampler s, std::mt19937_64 &rng);

EstimatorResult cmd_estimate(unsigned k, unsigned n, std::uint64_t trials, Sampler sampler,
                             std::uint64_t seed, RunOptions const &opt = {});

struct McgStage
{
  std::string name;
  bool passed = false;
  std::string detail;
};

struct McgReport
{
  unsigned k = 0;
  unsigned g = 0;
  Construction variant = Construction::Four;
  GenusDecomposition dec;
  std::vector<McgStage> stages;
  std::string word;

  bool passed() const;
};

/// Throws RangeError when (k, g) is not admissible for the variant.
McgReport cmd_mcg(unsigned k, unsigned g, Construction variant);

std::string to_json(SweepReport const &r, bool timings = false);
std::string to_csv(SweepReport const &r, bool timings = false);
std::string to_json(EstimatorResult const &r);
std::string to_csv(EstimatorResult const &r);
std::string to_json(McgReport const &r);
std::string to_csv(McgReport const &r);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view s);

/**
 * Content-addressed store: one file per key, named by the key's FNV-1a hash
 * and holding the key itself so collisions are detected. Writes go to a
 * unique temporary file then rename into place.
 */
class ResultCache
{
public:
  explicit ResultCache(std::filesystem::path dir);

  std::optional<std::string> lookup(std::string const &key) const;
  void store(std::string const &key, std::string const &value) const;

private:
  std::filesystem::path path_for(std::string const &key) const;

  std::filesystem::path _dir;
};

} // namespace torsiongen
