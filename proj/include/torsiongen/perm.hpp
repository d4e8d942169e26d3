#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace torsiongen
{

using Point = std::uint32_t;

/**
 * A permutation of {0, ..., n-1} stored as its image table.
 *
 * Composition follows the right-to-left convention: (p * q)(x) = p(q(x)),
 * so the right factor acts first. Commutators are [p, q] = p^-1 q^-1 p q.
 */
class Permutation
{
public:
  explicit Permutation(unsigned degree = 1);

  /// Validates that `images` is a bijection on {0, ..., images.size()-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(unsigned degree) { return Permutation(degree); }

  /// Builds a single cycle; entries are reduced mod `degree`.
  static Permutation cycle(unsigned degree, std::span<long const> points);
  static Permutation cycle(unsigned degree, std::initializer_list<long> points);

  unsigned degree() const noexcept { return static_cast<unsigned>(_images.size()); }
  Point operator[](Point x) const noexcept { return _images[x]; }
  Point operator()(Point x) const noexcept { return _images[x]; }
  std::vector<Point> const &images() const noexcept { return _images; }

  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// Least moved point, or degree() when the permutation is the identity.
  Point first_moved() const noexcept;

  auto operator<=>(Permutation const &) const = default;
  bool operator==(Permutation const &) const = default;

private:
  std::vector<Point> _images;
};

enum class Parity
{
  Even,
  Odd
};

Permutation compose(Permutation const &p, Permutation const &q);
Permutation operator*(Permutation const &p, Permutation const &q);
Permutation power(Permutation const &p, long long e);
Permutation commutator(Permutation const &p, Permutation const &q);

unsigned long long order_of(Permutation const &p);
Parity parity(Permutation const &p);

/// Canonical cycle decomposition: each cycle starts at its minimum, cycles
/// sorted by minimum, fixed points omitted.
struct CycleDecomposition
{
  unsigned degree = 1;
  std::vector<std::vector<Point>> cycles;

  bool operator==(CycleDecomposition const &) const = default;
};

CycleDecomposition cycles_of(Permutation const &p);
Permutation from_cycles(CycleDecomposition const &d);

/// Parses whitespace separated cycles such as "(6 7 8 9)(10 11 12 13)".
Permutation parse_cycles(std::string_view text, unsigned degree);

/// "()" for the identity, otherwise canonical cycle notation.
std::string to_cycle_string(Permutation const &p);

std::ostream &operator<<(std::ostream &os, Permutation const &p);

} // namespace torsiongen
