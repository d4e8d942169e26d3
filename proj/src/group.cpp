#include "torsiongen/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>

#include "torsiongen/error.hpp"
#include "torsiongen/rng.hpp"

namespace torsiongen
{

namespace
{

using Raw = std::vector<Point>;

Raw raw_compose(Raw const &p, Raw const &q)
{
  Raw r(p.size());
  for (std::size_t x = 0; x < r.size(); ++x)
    r[x] = p[q[x]];
  return r;
}

Raw raw_inverse(Raw const &p)
{
  Raw r(p.size());
  for (std::size_t x = 0; x < r.size(); ++x)
    r[p[x]] = static_cast<Point>(x);
  return r;
}

bool raw_is_identity(Raw const &p)
{
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] != x)
      return false;
  }
  return true;
}

Point raw_first_moved(Raw const &p)
{
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] != x)
      return static_cast<Point>(x);
  }
  return static_cast<Point>(p.size());
}

unsigned check_degrees(std::vector<Permutation> const &gens)
{
  if (gens.empty())
    throw Error(Errc::EmptyGeneratorList, "no generators given");

  unsigned const n = gens.front().degree();
  for (auto const &g : gens) {
    if (g.degree() != n)
      throw Error(Errc::DegreeMismatch,
                  std::to_string(g.degree()) + " vs " + std::to_string(n));
  }
  return n;
}

bool all_even(std::vector<Permutation> const &gens)
{
  return std::all_of(gens.begin(), gens.end(),
                     [](Permutation const &g) { return parity(g) == Parity::Even; });
}

// Uniform draw below `bound` without relying on implementation-defined
// distributions, so chains are identical across standard libraries.
class ProductReplacement
{
public:
  ProductReplacement(std::vector<Raw> const &gens, std::uint64_t seed) : _rng(seed)
  {
    std::size_t const slots = std::max<std::size_t>(10, gens.size());
    for (std::size_t i = 0; i < slots; ++i)
      _state.push_back(gens[i % gens.size()]);

    _acc = Raw(gens.front().size());
    std::iota(_acc.begin(), _acc.end(), Point{0});

    for (int i = 0; i < 50; ++i)
      next();
  }

  Raw const &next()
  {
    std::size_t const m = _state.size();
    std::size_t const i = draw_below(_rng, m);
    std::size_t j = draw_below(_rng, m - 1);
    if (j >= i)
      ++j;

    Raw const other = (_rng() & 1u) ? raw_inverse(_state[j]) : _state[j];
    if (_rng() & 1u)
      _state[i] = raw_compose(_state[i], other);
    else
      _state[i] = raw_compose(other, _state[i]);

    _acc = raw_compose(_acc, _state[i]);
    return _acc;
  }

private:
  std::mt19937_64 _rng;
  std::vector<Raw> _state;
  Raw _acc;
};

} // namespace

GroupCard factorial(unsigned n)
{
  GroupCard r = 1;
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

StabilizerChain StabilizerChain::build(std::vector<Permutation> const &gens)
{
  Options options;
  return build(gens, options);
}

StabilizerChain StabilizerChain::build(std::vector<Permutation> const &gens,
                                       Options const &options)
{
  unsigned const n = check_degrees(gens);

  StabilizerChain chain(n);
  chain._gens = gens;

  std::vector<Raw> nontrivial;
  for (auto const &g : gens) {
    if (!g.is_identity())
      nontrivial.push_back(g.images());
  }
  if (nontrivial.empty())
    return chain;

  auto reached_bound = [&] {
    return options.order_upper_bound && chain.order() >= *options.order_upper_bound;
  };

  // Seed the chain with the generators themselves.
  for (auto const &g : nontrivial) {
    std::size_t stopped = 0;
    Raw h = chain.sift_raw(g, 0, stopped);
    if (!raw_is_identity(h))
      chain.add_strong(h, stopped);
  }

  if (reached_bound()) {
    chain._closed_by_bound = true;
    return chain;
  }

  // Random sifting phase. Every residue is a genuine group element, so the
  // product of basic orbit lengths stays a lower bound for |G| throughout.
  ProductReplacement pr(nontrivial, options.seed);
  unsigned quiet = 0;
  while (quiet < options.random_patience) {
    std::size_t stopped = 0;
    Raw h = chain.sift_raw(pr.next(), 0, stopped);
    if (raw_is_identity(h)) {
      ++quiet;
      continue;
    }
    quiet = 0;
    chain.add_strong(h, stopped);
    if (reached_bound()) {
      chain._closed_by_bound = true;
      return chain;
    }
  }

  // Exhaustive Schreier generator check makes the chain a certificate.
  std::size_t level = chain._levels.size();
  while (level > 0) {
    std::size_t current = level - 1;
    if (chain.schreier_check_from(current)) {
      if (reached_bound()) {
        chain._closed_by_bound = true;
        return chain;
      }
      level = current + 1;
    } else {
      level = current;
    }
  }

  return chain;
}

StabilizerChain::Raw StabilizerChain::sift_raw(Raw g, std::size_t from,
                                               std::size_t &stopped) const
{
  for (std::size_t i = from; i < _levels.size(); ++i) {
    Level const &lv = _levels[i];
    Point const delta = g[lv.base_point];
    std::int32_t const j = lv.slot[delta];
    if (j < 0) {
      stopped = i;
      return g;
    }
    if (j == 0)
      continue; // representative of the base point itself is the identity
    Raw const &v = lv.inv_reps[static_cast<std::size_t>(j)];
    for (auto &x : g)
      x = v[x];
  }
  stopped = _levels.size();
  return g;
}

void StabilizerChain::add_strong(Raw const &h, std::size_t level)
{
  if (level == _levels.size()) {
    Level lv;
    lv.base_point = raw_first_moved(h);
    _base.push_back(lv.base_point);
    _levels.push_back(std::move(lv));
  }

  auto const idx = static_cast<std::uint32_t>(_strong.size());
  _strong.push_back(h);
  for (std::size_t i = 0; i <= level; ++i) {
    _levels[i].gens.push_back(idx);
    extend_orbit(i, _levels[i].gens.size() - 1);
  }
}

void StabilizerChain::extend_orbit(std::size_t level, std::size_t first_new_gen)
{
  Level &lv = _levels[level];

  if (lv.orbit.empty()) {
    lv.slot.assign(_degree, -1);
    lv.orbit.push_back(lv.base_point);
    lv.slot[lv.base_point] = 0;
    Raw id(_degree);
    std::iota(id.begin(), id.end(), Point{0});
    lv.inv_reps.push_back(std::move(id));
    first_new_gen = 0;
  }

  std::vector<Raw> inverses;
  inverses.reserve(lv.gens.size());
  for (auto gi : lv.gens)
    inverses.push_back(raw_inverse(_strong[gi]));

  // New generators must be applied to every known point; all generators to
  // points discovered during this extension.
  std::size_t const old_size = lv.orbit.size();
  auto visit = [&](std::size_t j, std::size_t gen_pos) {
    Raw const &s = _strong[lv.gens[gen_pos]];
    Point const img = s[lv.orbit[j]];
    if (lv.slot[img] >= 0)
      return;
    // v' = v_j o s^-1 sends img back to the base point.
    Raw const &vj = lv.inv_reps[j];
    Raw const &sinv = inverses[gen_pos];
    Raw v(_degree);
    for (std::size_t x = 0; x < _degree; ++x)
      v[x] = vj[sinv[x]];
    lv.slot[img] = static_cast<std::int32_t>(lv.orbit.size());
    lv.orbit.push_back(img);
    lv.inv_reps.push_back(std::move(v));
  };

  for (std::size_t j = 0; j < old_size; ++j) {
    for (std::size_t gp = first_new_gen; gp < lv.gens.size(); ++gp)
      visit(j, gp);
  }
  for (std::size_t j = old_size; j < lv.orbit.size(); ++j) {
    for (std::size_t gp = 0; gp < lv.gens.size(); ++gp)
      visit(j, gp);
  }
}

// Checks Schreier generators of `level`; on the first non-sifting one the
// residue is added and `level` is set to the level that received it.
bool StabilizerChain::schreier_check_from(std::size_t &level)
{
  Level const &lv = _levels[level];
  for (std::size_t j = 0; j < lv.orbit.size(); ++j) {
    Raw const u = raw_inverse(lv.inv_reps[j]);
    for (std::size_t gp = 0; gp < lv.gens.size(); ++gp) {
      Raw const &s = _strong[lv.gens[gp]];
      Point const img = s[lv.orbit[j]];
      Raw const &v = lv.inv_reps[static_cast<std::size_t>(lv.slot[img])];

      Raw schreier(_degree);
      for (std::size_t x = 0; x < _degree; ++x)
        schreier[x] = v[s[u[x]]];

      std::size_t stopped = 0;
      Raw h = sift_raw(std::move(schreier), level + 1, stopped);
      if (!raw_is_identity(h)) {
        add_strong(h, stopped);
        level = stopped;
        return true;
      }
    }
  }
  return false;
}

std::vector<Permutation> StabilizerChain::strong_generators(std::size_t level) const
{
  std::vector<Permutation> res;
  if (level >= _levels.size())
    return res;
  for (auto gi : _levels[level].gens)
    res.emplace_back(_strong[gi]);
  return res;
}

std::vector<Point> StabilizerChain::basic_orbit(std::size_t level) const
{
  if (level >= _levels.size())
    return {};
  return _levels[level].orbit;
}

GroupCard StabilizerChain::order() const
{
  GroupCard r = 1;
  for (auto const &lv : _levels)
    r *= lv.orbit.size();
  return r;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation const &g) const
{
  if (g.degree() != _degree)
    throw Error(Errc::DegreeMismatch, "sifted element has wrong degree");
  std::size_t stopped = 0;
  Raw h = sift_raw(g.images(), 0, stopped);
  return {Permutation(std::move(h)), stopped};
}

bool StabilizerChain::contains(Permutation const &g) const
{
  auto [h, stopped] = sift(g);
  return stopped == _levels.size() && h.is_identity();
}

namespace
{

StabilizerChain::Options bounded_options(std::vector<Permutation> const &gens)
{
  // G <= Sym(n), and G <= Alt(n) whenever every generator is even.
  StabilizerChain::Options opts;
  unsigned const n = check_degrees(gens);
  GroupCard bound = factorial(n);
  if (all_even(gens) && n >= 2)
    bound /= 2;
  opts.order_upper_bound = bound;
  return opts;
}

} // namespace

StabilizerChain build_chain(std::vector<Permutation> const &gens)
{
  return StabilizerChain::build(gens, bounded_options(gens));
}

GroupCard group_order(StabilizerChain const &chain)
{
  return chain.order();
}

std::string to_string(GroupKind kind)
{
  switch (kind) {
    case GroupKind::Symmetric: return "Symmetric";
    case GroupKind::Alternating: return "Alternating";
    case GroupKind::Other: return "Other";
  }
  return "Other";
}

Classification classify(std::vector<Permutation> const &gens)
{
  unsigned const n = check_degrees(gens);
  auto const chain = build_chain(gens);

  Classification c;
  c.order = chain.order();

  GroupCard const sym = factorial(n);
  if (c.order == sym)
    c.kind = GroupKind::Symmetric;
  else if (c.order * 2 == sym && all_even(gens))
    c.kind = GroupKind::Alternating;
  else
    c.kind = GroupKind::Other;

  return c;
}

std::vector<Point> orbit(std::vector<Permutation> const &gens, Point point)
{
  unsigned const n = check_degrees(gens);
  if (point >= n)
    throw Error(Errc::PointOutOfRange, "point " + std::to_string(point));

  std::vector<bool> seen(n, false);
  std::vector<Point> res{point};
  seen[point] = true;
  for (std::size_t i = 0; i < res.size(); ++i) {
    for (auto const &g : gens) {
      Point const y = g[res[i]];
      if (!seen[y]) {
        seen[y] = true;
        res.push_back(y);
      }
    }
  }
  std::sort(res.begin(), res.end());
  return res;
}

bool is_transitive(std::vector<Permutation> const &gens)
{
  return orbit(gens, 0).size() == gens.front().degree();
}

bool is_two_transitive(std::vector<Permutation> const &gens)
{
  unsigned const n = check_degrees(gens);
  if (n < 2)
    throw Error(Errc::InvalidParams, "2-transitivity needs degree >= 2");
  if (!is_transitive(gens))
    return false;
  if (n == 2)
    return true;

  auto const chain = build_chain(gens);
  Point const beta = chain.base().front();
  auto stab = chain.strong_generators(1);
  if (stab.empty())
    return false;

  Point const other = beta == 0 ? 1 : 0;
  return orbit(stab, other).size() == n - 1;
}

std::vector<Point> minimal_blocks(std::vector<Permutation> const &gens, Point x)
{
  unsigned const n = check_degrees(gens);
  if (x >= n)
    throw Error(Errc::PointOutOfRange, "point " + std::to_string(x));

  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  auto unite = [&](Point a, Point b) {
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  };

  std::deque<std::pair<Point, Point>> queue;
  if (x != 0) {
    unite(0, x);
    queue.emplace_back(0, x);
  }

  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (auto const &g : gens) {
      Point const ra = find(g[a]);
      Point const rb = find(g[b]);
      if (ra != rb) {
        unite(ra, rb);
        queue.emplace_back(ra, rb);
      }
    }
  }

  std::vector<Point> labels(n);
  for (Point y = 0; y < n; ++y)
    labels[y] = find(y);
  return labels;
}

bool is_primitive(std::vector<Permutation> const &gens)
{
  unsigned const n = check_degrees(gens);
  if (n < 2)
    throw Error(Errc::InvalidParams, "primitivity needs degree >= 2");
  if (!is_transitive(gens))
    return false;

  for (Point x = 1; x < n; ++x) {
    auto const labels = minimal_blocks(gens, x);
    if (std::any_of(labels.begin(), labels.end(), [](Point l) { return l != 0; }))
      return false;
  }
  return true;
}

namespace
{

bool is_prime(unsigned p)
{
  if (p < 2)
    return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0)
      return false;
  }
  return true;
}

std::optional<JordanWitness> as_witness(Permutation const &e, std::string word)
{
  auto d = cycles_of(e);
  if (d.cycles.size() != 1)
    return std::nullopt;

  auto const p = static_cast<unsigned>(d.cycles.front().size());
  if (!is_prime(p) || p + 3 > e.degree())
    return std::nullopt;

  return JordanWitness{std::move(word), e, std::move(d), p};
}

std::string pow_name(std::string const &name, unsigned e)
{
  return e == 1 ? name : name + "^" + std::to_string(e);
}

} // namespace

std::optional<JordanWitness> jordan_certificate(std::vector<Permutation> const &gens,
                                                unsigned search_depth,
                                                std::vector<std::string> names)
{
  if (gens.empty())
    return std::nullopt;
  unsigned const n = check_degrees(gens);
  if (n < 6)
    return std::nullopt;
  search_depth = std::max(search_depth, 1u);

  if (names.size() != gens.size()) {
    names.clear();
    for (std::size_t i = 0; i < gens.size(); ++i)
      names.push_back("g" + std::to_string(i));
  }

  // Keep the smallest prime; among equal primes the first word in search order.
  std::optional<JordanWitness> best;
  auto offer = [&](Permutation const &e, std::string word) {
    if (best && best->prime == 2)
      return;
    auto w = as_witness(e, std::move(word));
    if (w && (!best || w->prime < best->prime))
      best = std::move(w);
  };

  for (std::size_t i = 0; i < gens.size(); ++i)
    offer(gens[i], names[i]);

  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (unsigned e = 2; e <= search_depth; ++e)
      offer(power(gens[i], e), pow_name(names[i], e));
  }

  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i != j)
        offer(commutator(gens[i], gens[j]), "[" + names[i] + "," + names[j] + "]");
    }
  }

  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j)
        continue;
      for (unsigned ei = 1; ei <= search_depth; ++ei) {
        for (unsigned ej = 1; ej <= search_depth; ++ej) {
          if (ei == 1 && ej == 1)
            continue;
          offer(commutator(power(gens[i], ei), power(gens[j], ej)),
                "[" + pow_name(names[i], ei) + "," + pow_name(names[j], ej) + "]");
        }
      }
    }
  }

  return best;
}

} // namespace torsiongen
