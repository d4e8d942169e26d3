#pragma once

#include <optional>
#include <string>

namespace torsiongen
{

/**
 * Witness that genus g = a*k + b*(k-1) (+1 when plus_one).
 *
 * The surface is a stack of a genus-k pieces followed by b genus-(k-1)
 * pieces, each with k-fold rotational symmetry; plus_one adds one handle
 * along the rotation axis and requires b = 0, a >= 1.
 */
struct GenusDecomposition
{
  unsigned k = 2;
  unsigned a = 0;
  unsigned b = 0;
  bool plus_one = false;

  unsigned genus() const noexcept { return a * k + b * (k - 1) + (plus_one ? 1u : 0u); }
  unsigned pieces() const noexcept { return a + b; }

  /// Genus of the i-th piece, 0-based.
  unsigned piece_genus(unsigned i) const noexcept { return i < a ? k : k - 1; }

  bool operator==(GenusDecomposition const &) const = default;
};

/// Throws InvalidDecomposition if the invariants do not hold.
void validate(GenusDecomposition const &dec);

std::string to_string(GenusDecomposition const &dec);

/// Maximal-a decomposition of the form a*k + b*(k-1); falls back to a*k + 1.
/// With require_leading_k only a >= 1 qualifies.
std::optional<GenusDecomposition> decompose(unsigned k, unsigned g, bool require_leading_k = false);

/// (k-1)(k-3); every g at or above it is representable. k >= 5.
unsigned stable_bound(unsigned k);

struct SmallGenusCount
{
  unsigned count = 0;
  unsigned total = 0;
};

/// Counts representable g in 1 .. stable_bound(k)-1 by enumeration.
SmallGenusCount count_small_representable(unsigned k);

/// (k-1)^2 + 1, k >= 6.
unsigned theorem1_bound(unsigned k);

} // namespace torsiongen
