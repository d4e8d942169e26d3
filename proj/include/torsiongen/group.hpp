#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "torsiongen/perm.hpp"

namespace torsiongen
{

/// Exact group order; |Sym(n)| overflows machine words long before n = 200.
using GroupCard = boost::multiprecision::cpp_int;

GroupCard factorial(unsigned n);

/**
 * Base and strong generating set with explicit transversals.
 *
 * Level i stores the strong generators fixing base[0..i-1] and, for every
 * point delta in the basic orbit, the inverse of a coset representative u
 * with u(base[i]) = delta. The product of basic orbit lengths is the group
 * order once construction has completed.
 */
class StabilizerChain
{
public:
  struct Options
  {
    /// When set, construction stops as soon as the proven lower bound on the
    /// order (product of basic orbit lengths) reaches this value.  The caller
    /// must guarantee it is an upper bound for |G|.
    std::optional<GroupCard> order_upper_bound;

    /// Consecutive trivially-sifting random elements before switching to the
    /// exhaustive Schreier generator check.
    unsigned random_patience = 48;

    std::uint64_t seed = 0x7e57ab1e5eedULL;
  };

  static StabilizerChain build(std::vector<Permutation> const &gens);
  static StabilizerChain build(std::vector<Permutation> const &gens, Options const &options);

  unsigned degree() const noexcept { return _degree; }
  std::vector<Point> const &base() const noexcept { return _base; }
  std::size_t depth() const noexcept { return _levels.size(); }

  std::vector<Permutation> const &generators() const noexcept { return _gens; }

  /// Strong generators fixing the first `level` base points.
  std::vector<Permutation> strong_generators(std::size_t level) const;
  std::vector<Point> basic_orbit(std::size_t level) const;

  GroupCard order() const;

  /// Residue after sifting and the level at which sifting stopped.
  std::pair<Permutation, std::size_t> sift(Permutation const &g) const;
  bool contains(Permutation const &g) const;

  /// True when the chain was closed by matching a supplied order bound
  /// rather than by the exhaustive Schreier generator check.
  bool closed_by_bound() const noexcept { return _closed_by_bound; }

private:
  struct Level
  {
    Point base_point = 0;
    std::vector<std::uint32_t> gens;       // indices into _strong
    std::vector<Point> orbit;              // in discovery order
    std::vector<std::int32_t> slot;        // point -> index into orbit, -1 if absent
    std::vector<std::vector<Point>> inv_reps; // inv_reps[j] maps orbit[j] back to base_point
  };

  explicit StabilizerChain(unsigned degree) : _degree(degree) {}

  using Raw = std::vector<Point>;

  Raw sift_raw(Raw g, std::size_t from, std::size_t &stopped) const;
  void add_strong(Raw const &h, std::size_t level);
  void extend_orbit(std::size_t level, std::size_t first_new_gen);
  bool schreier_check_from(std::size_t &level);

  unsigned _degree;
  std::vector<Point> _base;
  std::vector<Permutation> _gens;
  std::vector<Raw> _strong;
  std::vector<Level> _levels;
  bool _closed_by_bound = false;
};

StabilizerChain build_chain(std::vector<Permutation> const &gens);
GroupCard group_order(StabilizerChain const &chain);

enum class GroupKind
{
  Symmetric,
  Alternating,
  Other
};

struct Classification
{
  GroupKind kind = GroupKind::Other;
  GroupCard order;

  bool operator==(Classification const &) const = default;
};

std::string to_string(GroupKind kind);

/// Exact Sym(n) / Alt(n) / Other decision by stabilizer-chain order.
Classification classify(std::vector<Permutation> const &gens);

std::vector<Point> orbit(std::vector<Permutation> const &gens, Point point);
bool is_transitive(std::vector<Permutation> const &gens);
bool is_two_transitive(std::vector<Permutation> const &gens);
bool is_primitive(std::vector<Permutation> const &gens);

/// Minimal block system containing {0, x}; returns the block label of every
/// point (labels are the least point of each block).
std::vector<Point> minimal_blocks(std::vector<Permutation> const &gens, Point x);

struct JordanWitness
{
  std::string word;
  Permutation element;
  CycleDecomposition resulting_cycle;
  unsigned prime = 0;
};

/**
 * Bounded search for an element that is a single p-cycle with p prime and
 * p <= n - 3. Search order: generators, powers g^i (2 <= i <= depth),
 * commutators [x, y] of ordered generator pairs, then [x^i, y^j] for
 * i, j <= depth. The smallest prime found wins, earliest word on ties.
 * Degree below 6 yields none. A missing witness proves nothing.
 */
std::optional<JordanWitness> jordan_certificate(std::vector<Permutation> const &gens,
                                                unsigned search_depth = 4,
                                                std::vector<std::string> names = {});

} // namespace torsiongen
