#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsiongen/constructions.hpp"
#include "torsiongen/error.hpp"
#include "torsiongen/group.hpp"

using namespace torsiongen;

namespace
{

std::string C(Permutation const &p) { return to_cycle_string(p); }

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

TEST_CASE("step cycles")
{
  CHECK(C(step_cycle(4, 15, 14)) == "(0 1 2 14)");
  CHECK(step_cycle(4, 15, 14) == parse_cycles("(14 0 1 2)", 15));
  CHECK(C(step_cycle(2, 5, 0)) == "(0 1)");
  CHECK(C(step_cycle(5, 5, 3)) == "(0 1 2 3 4)");
  CHECK(code_of([] { step_cycle(6, 5, 0); }) == Errc::InvalidParams);
  CHECK(code_of([] { step_cycle(3, 5, 5); }) == Errc::InvalidParams);
}

TEST_CASE("sequential step products")
{
  CHECK(seq_step_product(4, 15, 6, 3) == parse_cycles("(6 7 8 9)(10 11 12 13)(14 0 1 2)", 15));
  CHECK(C(seq_step_product(5, 18, 0, 3)) == "(0 1 2 3 4)(5 6 7 8 9)(10 11 12 13 14)");
  CHECK(code_of([] { seq_step_product(3, 9, 0, 4); }) == Errc::OverlapError);
  CHECK(code_of([] { seq_step_product(3, 9, 0, 0); }) == Errc::InvalidParams);
  for (unsigned k = 2; k <= 7; ++k) {
    for (unsigned n = k; n <= 20; ++n) {
      for (unsigned l = 1; l <= n / k; ++l)
        CHECK(order_of(seq_step_product(k, n, n - 1, l)) == k);
    }
  }
}

TEST_CASE("three-element generators")
{
  auto const s = prop61_generators(5, 18);
  CHECK(C(s.gens[0]) == "(0 1 2 3 4)(5 6 7 8 9)(10 11 12 13 14)");
  CHECK(s.gens[1] == parse_cycles("(4 5 6 7 8)(9 10 11 12 13)(14 15 16 17 0)", 18));
  CHECK(s.gens[2] == parse_cycles("(1 0 2 3 4)", 18));
  CHECK(s.which.case_tag == "k!|n;k>3");

  auto const t = prop61_generators(3, 9);
  CHECK(C(t.gens[2]) == "(0 1 2)");
  CHECK(t.gens[1] == seq_step_product(3, 9, 2, 2));
  CHECK(t.which.case_tag == "k|n;k=3");

  CHECK(code_of([] { prop61_generators(5, 9); }) == Errc::RangeError);

  for (unsigned k = 3; k <= 12; ++k) {
    for (unsigned n = 2 * k; n <= 60; ++n) {
      auto const g = prop61_generators(k, n);
      for (auto const &x : g.gens)
        CHECK(order_of(x) == k);
      if (k % 2 == 1) {
        for (auto const &x : g.gens)
          CHECK(parity(x) == Parity::Even);
      } else {
        CHECK(parity(g.gens[2]) == Parity::Odd);
      }
    }
  }
}

TEST_CASE("four-element even generators")
{
  auto const s = prop62_generators(4, 12);
  REQUIRE(s.gens.size() == 4);
  CHECK(s.gens.back() == parse_cycles("(10 11 3 4)(1 2)", 12));
  CHECK(s.names.back() == "t");
  auto const base = prop61_generators(4, 10);
  Permutation c12(12);
  {
    std::vector<Point> img(12);
    for (Point x = 0; x < 12; ++x)
      img[x] = x < 10 ? base.gens[2](x) : x;
    c12 = Permutation(img);
  }
  CHECK(s.gens[2] == parse_cycles("(10 11)", 12) * c12);
  CHECK(s.names[2] == "c'");

  CHECK(code_of([] { prop62_generators(6, 7); }) == Errc::RangeError);
  CHECK(code_of([] { prop62_generators(5, 12); }) == Errc::OddK);

  for (unsigned k = 4; k <= 12; k += 2) {
    for (unsigned n = k + 2; n <= 40; ++n) {
      auto const g = prop62_generators(k, n);
      CHECK(g.gens.size() <= 4);
      for (auto const &x : g.gens) {
        CHECK(order_of(x) == k);
        CHECK(parity(x) == Parity::Even);
      }
    }
  }
}

TEST_CASE("two k-cycles for small n")
{
  auto const s = miller_small_pair(3, 3);
  CHECK(group_order(build_chain(s.gens)) == 3);
  auto const p = miller_small_pair(5, 7);
  CHECK(classify(p.gens).kind == GroupKind::Alternating);
  CHECK(code_of([] { miller_small_pair(4, 9); }) == Errc::RangeError);
  for (unsigned k = 3; k <= 8; ++k) {
    for (unsigned n = k; n <= 2 * k - 1; ++n) {
      auto const m = miller_small_pair(k, n);
      for (auto const &x : m.gens)
        CHECK(cycles_of(x).cycles.size() == 1);
      CHECK(classify(m.gens).kind == (k % 2 ? GroupKind::Alternating : GroupKind::Symmetric));
    }
  }
}

TEST_CASE("conjecture pair cases")
{
  auto const c2 = conjecture_pair(4, 16);
  CHECK(c2.which.case_tag == "case2");
  CHECK(c2.gens[1] == parse_cycles("(15 0 1 2)(3 4 5 6)(7 8 9 10)", 16));
  CHECK(c2.gens[1] == seq_step_product(4, 16, 15, 3));

  auto const c3 = conjecture_pair(4, 19);
  CHECK(c3.which.case_tag == "case3");
  CHECK(c3.gens[1] == parse_cycles("(11 12)(13 14)(1 2 3 4)(5 6 7 8)(15 16 17 18)", 19));

  auto const c1 = conjecture_pair(5, 18);
  CHECK(c1.which.case_tag == "case1");
  CHECK(c1.gens[1] == parse_cycles("(4 5 6)", 18) * seq_step_product(5, 18, 4, 3));
  CHECK(cycles_of(c1.gens[1]).cycles[1] == std::vector<Point>{4, 6, 7, 8, 5});

  CHECK(code_of([] { conjecture_pair(4, 11); }) == Errc::CaseUndefined);
  CHECK(code_of([] { conjecture_pair(3, 2); }) == Errc::RangeError);

  // The case table is total on its domain and picks the branch by (k, n).
  for (unsigned k = 3; k <= 12; ++k) {
    for (unsigned n = k; n <= 80; ++n) {
      unsigned const q = n / k;
      std::string want;
      if (k % 2 == 1 || q % 2 == 1)
        want = "case1";
      else if (n % k != k - 1)
        want = "case2";
      else
        want = "case3";
      if (want == "case3" && q < 3) {
        CHECK(code_of([&] { conjecture_pair(k, n); }) == Errc::CaseUndefined);
        continue;
      }
      auto const p = conjecture_pair(k, n);
      CHECK(p.which.case_tag == want);
      for (auto const &x : p.gens)
        CHECK(order_of(x) == k);
    }
  }

  CHECK(is_known_conjecture_exception(3, 6));
  CHECK(is_known_conjecture_exception(3, 7));
  CHECK(is_known_conjecture_exception(3, 8));
  CHECK_FALSE(is_known_conjecture_exception(3, 9));
  CHECK(classify(conjecture_pair(3, 7).gens).kind == GroupKind::Other);
}

TEST_CASE("family names")
{
  for (Family f : {Family::Prop61, Family::Prop62, Family::MillerSmall, Family::Conjecture})
    CHECK(family_from_string(to_string(f)) == f);
  CHECK(code_of([] { family_from_string("nope"); }) == Errc::InvalidParams);
}
