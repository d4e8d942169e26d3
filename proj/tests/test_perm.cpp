#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "torsiongen/constructions.hpp"
#include "torsiongen/error.hpp"
#include "torsiongen/perm.hpp"

using namespace torsiongen;

namespace
{

Permutation random_perm(unsigned n, std::mt19937_64 &rng)
{
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

Errc code_of(auto &&fn)
{
  try {
    fn();
  } catch (Error const &e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::InvalidParams;
}

} // namespace

TEST_CASE("parse_cycles on the worked step product")
{
  auto const p = parse_cycles("(6 7 8 9)(10 11 12 13)(14 0 1 2)", 15);
  CHECK(p(6) == 7);
  CHECK(p(14) == 0);
  CHECK(p(2) == 14);
  CHECK(p(3) == 3);
  CHECK(p(4) == 4);
  CHECK(p(5) == 5);
  CHECK(order_of(p) == 4);
  CHECK(to_cycle_string(p) == "(0 1 2 14)(6 7 8 9)(10 11 12 13)");
  CHECK(p == seq_step_product(4, 15, 6, 3));
}

TEST_CASE("parse_cycles edge cases and errors")
{
  CHECK(parse_cycles("", 5).is_identity());
  CHECK(parse_cycles("  ", 5).is_identity());
  CHECK(parse_cycles("(0 1) (2 3)", 4) == parse_cycles("(0 1)(2 3)", 4));
  CHECK(code_of([] { parse_cycles("(0 1)(1 2)", 3); }) == Errc::RepeatedPoint);
  CHECK(code_of([] { parse_cycles("(0 5)", 5); }) == Errc::PointOutOfRange);
  CHECK(code_of([] { parse_cycles("(0 1", 5); }) == Errc::MalformedCycle);
  CHECK(code_of([] { parse_cycles("(0 x)", 5); }) == Errc::MalformedCycle);
  CHECK(to_cycle_string(Permutation::identity(4)) == "()");
}

TEST_CASE("compose follows right-to-left application")
{
  auto const c = parse_cycles("(2 3 4)", 9);
  CHECK(c * c == parse_cycles("(2 4 3)", 9));
  auto const r = parse_cycles("(0 1 2)", 3);
  CHECK(compose(r, Permutation::identity(3)) == r);
  auto const five = parse_cycles("(0 1 2 3 4)", 5);
  CHECK(compose(five, five.inverse()).is_identity());
  CHECK(code_of([] { compose(Permutation(3), Permutation(4)); }) == Errc::DegreeMismatch);

  // Independent point-by-point oracle on random pairs.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto const p = random_perm(9, rng);
    auto const q = random_perm(9, rng);
    std::vector<std::vector<unsigned>> chain{{p.images().begin(), p.images().end()},
                                             {q.images().begin(), q.images().end()}};
    auto const want = oracle::apply_chain(chain, 9);
    CHECK(std::vector<Point>(want.begin(), want.end()) == (p * q).images());
  }
}

TEST_CASE("powers")
{
  auto const five = parse_cycles("(0 1 2 3 4)", 5);
  CHECK(power(five, 5).is_identity());
  CHECK(power(five, 0).is_identity());
  CHECK(power(five, -1) == parse_cycles("(0 4 3 2 1)", 5));
  auto const mixed = parse_cycles("(0 1)(2 3 4)", 5);
  Permutation acc = Permutation::identity(5);
  for (int i = 0; i < 6; ++i)
    acc = acc * mixed;
  CHECK(acc.is_identity());
  CHECK(power(mixed, 6).is_identity());
  CHECK(order_of(mixed) == 6);
}

TEST_CASE("order_of")
{
  CHECK(order_of(Permutation::identity(7)) == 1);
  for (unsigned k = 4; k <= 12; k += 2) {
    // (a b 3 4 ... k)(1 2) shape: a k-cycle times a disjoint transposition
    std::vector<long> cyc{0};
    for (long i = 3; i <= static_cast<long>(k); ++i)
      cyc.push_back(i);
    cyc.push_back(static_cast<long>(k) + 1);
    auto const p = Permutation::cycle(k + 2, cyc) * Permutation::cycle(k + 2, {1, 2});
    CHECK(order_of(p) == k);
    CHECK(parity(p) == Parity::Even);
  }
}

TEST_CASE("commutator witnesses")
{
  auto const s5 = prop61_generators(5, 18);
  CHECK(to_cycle_string(commutator(s5.gens[0], s5.gens[2])) == "(0 1 3)");
  auto const s8 = prop61_generators(8, 24);
  CHECK(to_cycle_string(commutator(s8.gens[0], s8.gens[2])) == "(0 1 6)");
  auto const p = parse_cycles("(0 2 4)(1 3)", 6);
  CHECK(commutator(p, p).is_identity());
  for (unsigned k = 4; k <= 12; ++k) {
    auto const s = prop61_generators(k, 3 * k);
    CAPTURE(k);
    CHECK(commutator(s.gens[0], s.gens[2]) == Permutation::cycle(3 * k, {0, 1, long(k) - 2}));
  }
}

TEST_CASE("parity")
{
  CHECK(parity(parse_cycles("(0 1 2)", 3)) == Parity::Even);
  CHECK(parity(Permutation::identity(3)) == Parity::Even);
  for (unsigned k = 4; k <= 12; k += 2) {
    auto const s = prop61_generators(k, 2 * k);
    CHECK(parity(s.gens[2]) == Parity::Odd);
  }
}

TEST_CASE("algebraic properties on random permutations")
{
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    unsigned const n = 1 + static_cast<unsigned>(rng() % 12);
    auto const p = random_perm(n, rng);
    auto const q = random_perm(n, rng);
    auto const r = random_perm(n, rng);
    CHECK((p * q) * r == p * (q * r));
    CHECK((p * p.inverse()).is_identity());

    long long const e = static_cast<long long>(rng() % 41) - 20;
    auto const m = order_of(p);
    CHECK(order_of(power(p, e)) == m / std::gcd(static_cast<unsigned long long>(std::llabs(e)), m));

    bool const odd = (parity(p) == Parity::Odd) != (parity(q) == Parity::Odd);
    CHECK(parity(p * q) == (odd ? Parity::Odd : Parity::Even));

    CHECK(parse_cycles(to_cycle_string(p), n) == p);
    CHECK(from_cycles(cycles_of(p)) == p);
  }
}
