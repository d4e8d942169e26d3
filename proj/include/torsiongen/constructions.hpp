#pragma once

#include <string>
#include <vector>

#include "torsiongen/perm.hpp"

namespace torsiongen
{

enum class Family
{
  Prop61,
  Prop62,
  MillerSmall,
  Conjecture
};

std::string to_string(Family family);
Family family_from_string(std::string const &name);

/// Which branch of a piecewise definition produced a generating set.
struct ConstructionCase
{
  Family family = Family::Prop61;
  unsigned k = 0;
  unsigned n = 0;
  std::string case_tag;

  bool operator==(ConstructionCase const &) const = default;
};

struct GeneratorSet
{
  std::vector<Permutation> gens;
  std::vector<std::string> names;
  ConstructionCase which;
};

/// The k-cycle (a a+1 ... a+k-1) with entries mod n.
Permutation step_cycle(unsigned k, unsigned n, long a);

/// Product of `count` consecutive step k-cycles starting at a; the factors
/// are disjoint exactly when count <= floor(n/k).
Permutation seq_step_product(unsigned k, unsigned n, long a, long count);

/// Three order-k elements generating Sym(n) (k even) or Alt(n) (k odd);
/// requires k >= 3 and n >= 2k. Names are a, b, c.
GeneratorSet prop61_generators(unsigned k, unsigned n);

/// Two k-cycles on n points, k <= n <= 2k-1, generating Sym(n) for even k and
/// Alt(n) for odd k. Found by a deterministic search and certified.
GeneratorSet miller_small_pair(unsigned k, unsigned n);

/// At most four even order-k elements generating Alt(n); k even, n >= k+2.
/// The two appended points are n-2 and n-1.
GeneratorSet prop62_generators(unsigned k, unsigned n);

/// The candidate two-element generating pair (a, b) with its case tag
/// ("case1", "case2", "case3").
GeneratorSet conjecture_pair(unsigned k, unsigned n);

/// (3,6), (3,7), (3,8): the pair is returned but does not generate.
bool is_known_conjecture_exception(unsigned k, unsigned n);

/// Builds the family's generating set for (k, n).
GeneratorSet build_family(Family family, unsigned k, unsigned n);

/// Smallest n for which `family` is defined at k (k >= 3).
unsigned family_min_n(Family family, unsigned k);

} // namespace torsiongen
