#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torsiongen/genus.hpp"

namespace torsiongen
{

enum class CurveKind
{
  Alpha,
  Beta,
  Gamma,
  ExcludedGamma,
  Lantern, // x1, x2, x3 only; the other lantern curves alias Humphries labels
};

/// A labeled curve on S_g. Serialized as "beta:12", "gamma:4", "xgamma:5",
/// "alpha:1", "lantern:x3".
struct CurveLabel
{
  CurveKind kind = CurveKind::Beta;
  unsigned index = 1;

  auto operator<=>(CurveLabel const &) const = default;
};

std::string to_string(CurveLabel c);
CurveLabel parse_label(std::string_view s);

inline CurveLabel alpha(unsigned i) { return {CurveKind::Alpha, i}; }
inline CurveLabel beta(unsigned i) { return {CurveKind::Beta, i}; }
inline CurveLabel gamma(unsigned i) { return {CurveKind::Gamma, i}; }
inline CurveLabel xgamma(unsigned i) { return {CurveKind::ExcludedGamma, i}; }
inline CurveLabel lantern_x(unsigned i) { return {CurveKind::Lantern, i}; }

/// alpha_1, alpha_2, every beta, every gamma (excluded or not).
bool is_humphries(CurveLabel c);

using Slot = std::optional<CurveLabel>;

/**
 * One orbit of the rotation r in the model surface, pulled back to S_g.
 * Slot i holds the curve sent to r^i of the first slot's image, or nothing
 * when that image is not a tabled curve.
 */
struct Track
{
  std::string family;
  std::vector<Slot> slots;
};

/// A generator X = Xhat^-1 r Xhat recorded on the curves its tables fix.
struct GeneratorAction
{
  std::string name;
  unsigned order = 0;
  std::vector<Track> tracks;

  /// X^e(c). Empty if c is outside the tables or lands on an unlabeled slot.
  std::optional<CurveLabel> image(CurveLabel c, long long e = 1) const;

  /// One-step pairs (c, X(c)) with both ends labeled.
  std::vector<std::pair<CurveLabel, CurveLabel>> map() const;
};

/// Throws InvalidParams on a wrong track length or a label used twice.
void validate(GeneratorAction const &action);

struct Letter
{
  std::string gen;
  int exp = 1;

  bool operator==(Letter const &) const = default;
};

/// Word in the generators, applied to curves right to left.
using GenWord = std::vector<Letter>;

std::string to_string(GenWord const &w);
GenWord parse_gen_word(std::string_view s);
GenWord inverse(GenWord const &w);

enum class Construction
{
  Four,
  Three
};

std::string to_string(Construction c);
Construction construction_from_string(std::string const &s);

/// Elements playing f, g and h in the lantern lemma.
struct LemmaRoles
{
  GenWord f;
  GenWord g;
  GenWord h;
};

struct ActionTable
{
  unsigned k = 0;
  GenusDecomposition dec;
  Construction construction = Construction::Four;
  std::vector<CurveLabel> labels;
  std::vector<GeneratorAction> generators;
  LemmaRoles roles;

  unsigned genus() const { return dec.genus(); }
  GeneratorAction const *find(std::string_view name) const;

  /// Image of c under a word, runs of one letter taken as a single power.
  /// Empty when any run leaves the tables.
  std::optional<CurveLabel> apply(GenWord const &w, CurveLabel c) const;

  bool operator==(ActionTable const &) const;
};

/// f, g, h for Theorem 4.1(1). k >= 5.
ActionTable build_action_four(unsigned k, GenusDecomposition const &dec);

/// f, g for the three-element construction; h is the derived word.
/// Needs k = 6, k >= 8, or k = 7 with a leading genus-7 piece, and no +1 handle.
ActionTable build_action_three(unsigned k, GenusDecomposition const &dec);

/// The decomposition the constructions use for (k, g), if any.
std::optional<GenusDecomposition> admissible_decomposition(unsigned k, unsigned g,
                                                           Construction c);

struct OrbitCertificate
{
  bool single_orbit = false;
  std::vector<std::vector<CurveLabel>> components;
};

/// Union-find over every pair of labeled slots sharing a track.
OrbitCertificate certify_single_orbit(std::vector<GeneratorAction> const &actions,
                                      std::vector<CurveLabel> const &labels);
OrbitCertificate certify_single_orbit(ActionTable const &table);

/// f(gamma1) = gamma2, G(x3, x1) = (gamma1, gamma2), H(x2, alpha2) = (gamma1, gamma2)
/// with G, H the table's roles. Throws MissingLanternData if a role refers to
/// an absent generator or a lantern curve is unlabeled.
bool verify_lantern_hypotheses(ActionTable const &table);

enum class EdgeFamily
{
  FAlpha,  // f on the alpha curves
  GBlocks, // g on the G_i sets
  H,       // h, or the g-lantern tracks that carry derived h
};

std::string to_string(EdgeFamily e);

/// Copy of the table with one edge family removed.
ActionTable drop_edges(ActionTable table, EdgeFamily family);

std::string to_json(ActionTable const &table);
ActionTable table_from_json(std::string const &text);

} // namespace torsiongen
