#include "torsiongen/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "torsiongen/error.hpp"
#include "torsiongen/group.hpp"

namespace torsiongen
{

namespace
{

constexpr std::size_t miller_candidate_budget = 200000;

std::string kn(unsigned k, unsigned n)
{
  return "(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")";
}

Permutation embed(Permutation const &p, unsigned degree)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (Point x = 0; x < p.degree(); ++x)
    images[x] = p[x];
  return Permutation(std::move(images));
}

GroupKind parity_target(unsigned k)
{
  return k % 2 == 0 ? GroupKind::Symmetric : GroupKind::Alternating;
}

} // namespace

std::string to_string(Family family)
{
  switch (family) {
    case Family::Prop61: return "prop61";
    case Family::Prop62: return "prop62";
    case Family::MillerSmall: return "miller";
    case Family::Conjecture: return "conjecture";
  }
  return "prop61";
}

Family family_from_string(std::string const &name)
{
  if (name == "prop61")
    return Family::Prop61;
  if (name == "prop62")
    return Family::Prop62;
  if (name == "miller")
    return Family::MillerSmall;
  if (name == "conjecture")
    return Family::Conjecture;
  throw Error(Errc::InvalidParams, "unknown family '" + name + "'");
}

Permutation step_cycle(unsigned k, unsigned n, long a)
{
  if (k < 2 || k > n)
    throw Error(Errc::InvalidParams, "step cycle needs 2 <= k <= n, got " + kn(k, n));
  if (a < 0 || a >= static_cast<long>(n))
    throw Error(Errc::InvalidParams, "start point " + std::to_string(a) + " not in [0, n)");

  std::vector<long> pts(k);
  std::iota(pts.begin(), pts.end(), a);
  return Permutation::cycle(n, pts);
}

Permutation seq_step_product(unsigned k, unsigned n, long a, long count)
{
  if (count < 1)
    throw Error(Errc::InvalidParams, "sequential step product needs at least one cycle");
  if (k < 2 || k > n)
    throw Error(Errc::InvalidParams, "step cycle needs 2 <= k <= n, got " + kn(k, n));
  if (count > static_cast<long>(n / k))
    throw Error(Errc::OverlapError, std::to_string(count) + " cycles of length " +
                                      std::to_string(k) + " overlap on " +
                                      std::to_string(n) + " points");

  Permutation result(n);
  long const ln = n;
  for (long i = 0; i < count; ++i) {
    long const start = ((a + i * static_cast<long>(k)) % ln + ln) % ln;
    result = result * step_cycle(k, n, start);
  }
  return result;
}

GeneratorSet prop61_generators(unsigned k, unsigned n)
{
  if (k < 3 || n < 2 * k)
    throw Error(Errc::RangeError, "three-element construction needs k >= 3, n >= 2k; got " +
                                    kn(k, n));

  unsigned const q = n / k;
  bool const divides = n % k == 0;

  GeneratorSet s;
  s.names = {"a", "b", "c"};
  s.gens.push_back(seq_step_product(k, n, 0, q));
  s.gens.push_back(seq_step_product(k, n, k - 1, divides ? q - 1 : q));

  if (k == 3)
    s.gens.push_back(Permutation::cycle(n, {0, 1, 2}));
  else
    s.gens.push_back(Permutation::cycle(n, {0, 1, 2}) * step_cycle(k, n, 0));

  s.which = {Family::Prop61, k, n,
             std::string(divides ? "k|n" : "k!|n") + (k == 3 ? ";k=3" : ";k>3")};
  return s;
}

GeneratorSet miller_small_pair(unsigned k, unsigned n)
{
  if (k < 3 || n < k || n > 2 * k - 1)
    throw Error(Errc::RangeError, "two k-cycle range is k <= n <= 2k-1, got " + kn(k, n));

  GroupKind const target = parity_target(k);
  Permutation const first = step_cycle(k, n, 0);
  std::size_t tried = 0;

  auto accept = [&](Permutation const &second, std::string tag) -> std::optional<GeneratorSet> {
    ++tried;
    std::vector<Permutation> gens{first, second};
    if (!is_transitive(gens) || classify(gens).kind != target)
      return std::nullopt;
    GeneratorSet s;
    s.gens = std::move(gens);
    s.names = {"x", "y"};
    s.which = {Family::MillerSmall, k, n, std::move(tag)};
    return s;
  };

  for (unsigned shift = 1; shift < n; ++shift) {
    if (auto s = accept(step_cycle(k, n, shift), "step:" + std::to_string(shift)))
      return *s;
  }

  // Lexicographic k-subsets, each with its cyclic orders (minimum first).
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    std::vector<long> subset;
    for (unsigned x = 0; x < n; ++x) {
      if (mask[x])
        subset.push_back(x);
    }
    std::vector<long> rest(subset.begin() + 1, subset.end());
    do {
      if (tried >= miller_candidate_budget)
        throw Error(Errc::SearchExhausted, "no certified k-cycle pair for " + kn(k, n));

      std::vector<long> cyc{subset.front()};
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      std::string tag = "cycle:" + to_cycle_string(Permutation::cycle(n, cyc));
      if (auto s = accept(Permutation::cycle(n, cyc), std::move(tag)))
        return *s;
    } while (std::next_permutation(rest.begin(), rest.end()));
  } while (std::prev_permutation(mask.begin(), mask.end()));

  throw Error(Errc::SearchExhausted, "no certified k-cycle pair for " + kn(k, n));
}

GeneratorSet prop62_generators(unsigned k, unsigned n)
{
  if (k % 2 != 0)
    throw Error(Errc::OddK, "four-element alternating construction needs even k");
  if (k < 4 || n < k + 2)
    throw Error(Errc::RangeError, "four-element construction needs k >= 4, n >= k+2; got " +
                                    kn(k, n));

  unsigned const m = n - 2;
  GeneratorSet base = m >= 2 * k ? prop61_generators(k, m) : miller_small_pair(k, m);

  Permutation const swap_ab = Permutation::cycle(n, {static_cast<long>(n - 2),
                                                     static_cast<long>(n - 1)});
  GeneratorSet s;
  for (std::size_t i = 0; i < base.gens.size(); ++i) {
    Permutation g = embed(base.gens[i], n);
    if (parity(g) == Parity::Odd) {
      g = swap_ab * g;
      s.names.push_back(base.names[i] + "'");
    } else {
      s.names.push_back(base.names[i]);
    }
    s.gens.push_back(std::move(g));
  }

  // t = (a b 3 4 ... k)(1 2) needs the points 3..k below n-2.  When n = k+2
  // point k is the appended symbol itself, so the cycle shifts down by one:
  // (a b 2 ... k-1)(0 1).
  bool const literal = k + 3 <= n;
  long const lo = literal ? 3 : 2;
  std::vector<long> big{static_cast<long>(n - 2), static_cast<long>(n - 1)};
  for (long x = lo; x < lo + static_cast<long>(k) - 2; ++x)
    big.push_back(x);
  Permutation const t = Permutation::cycle(n, big) *
                        (literal ? Permutation::cycle(n, {1, 2}) : Permutation::cycle(n, {0, 1}));
  s.gens.push_back(t);
  s.names.push_back("t");

  s.which = {Family::Prop62, k, n,
             std::string(m >= 2 * k ? "base=prop61" : "base=miller") +
               (literal ? ";t=literal" : ";t=shifted")};
  return s;
}

GeneratorSet conjecture_pair(unsigned k, unsigned n)
{
  if (k < 3 || n < k)
    throw Error(Errc::RangeError, "two-element candidate needs n >= k >= 3; got " + kn(k, n));

  long const q = n / k;
  long const lk = k;
  long const ln = n;

  GeneratorSet s;
  s.names = {"a", "b"};
  s.gens.push_back(seq_step_product(k, n, 0, q));

  std::string tag;
  if (k % 2 == 1 || q % 2 == 1) {
    // Entries reduce mod n, so (k-1 k k+1) wraps for n = k and n = k+1.
    s.gens.push_back(Permutation::cycle(n, {lk - 1, lk, lk + 1}) *
                     seq_step_product(k, n, lk - 1, q));
    tag = "case1";
  } else if (static_cast<long>(n % k) != lk - 1) {
    s.gens.push_back(seq_step_product(k, n, (lk * q - 1) % ln, q - 1));
    tag = "case2";
  } else {
    if (q < 3)
      throw Error(Errc::CaseUndefined,
                  "d needs floor(n/k) >= 3 for its middle factor; got " + kn(k, n));
    Permutation const d = seq_step_product(2, n, lk * (q - 1) - 1, 2) *
                          seq_step_product(k, n, 1, q - 2) * step_cycle(k, n, lk * q - 1);
    s.gens.push_back(d);
    tag = "case3";
  }

  for (auto const &g : s.gens) {
    if (order_of(g) != k)
      throw Error(Errc::CaseUndefined, "candidate element lost order k at " + kn(k, n));
  }

  s.which = {Family::Conjecture, k, n, std::move(tag)};
  return s;
}

bool is_known_conjecture_exception(unsigned k, unsigned n)
{
  return k == 3 && (n == 6 || n == 7 || n == 8);
}

GeneratorSet build_family(Family family, unsigned k, unsigned n)
{
  switch (family) {
    case Family::Prop61: return prop61_generators(k, n);
    case Family::Prop62: return prop62_generators(k, n);
    case Family::MillerSmall: return miller_small_pair(k, n);
    case Family::Conjecture: return conjecture_pair(k, n);
  }
  throw Error(Errc::InvalidParams, "unknown family");
}

unsigned family_min_n(Family family, unsigned k)
{
  switch (family) {
    case Family::Prop61: return 2 * k;
    case Family::Prop62: return k + 2;
    case Family::MillerSmall: return k;
    case Family::Conjecture: return k;
  }
  return k;
}

} // namespace torsiongen
