#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsiongen/error.hpp"
#include "torsiongen/genus.hpp"

using namespace torsiongen;

namespace
{

// Independent representability test: any a, b >= 0, or the ak+1 form.
bool representable(unsigned k, unsigned g)
{
  for (unsigned a = 0; a * k <= g; ++a) {
    for (unsigned b = 0; a * k + b * (k - 1) <= g; ++b) {
      if (a * k + b * (k - 1) == g && a + b >= 1)
        return true;
    }
  }
  for (unsigned a = 1; a * k + 1 <= g; ++a) {
    if (a * k + 1 == g)
      return true;
  }
  return false;
}

} // namespace

TEST_CASE("decompose examples")
{
  auto const d = decompose(5, 18);
  REQUIRE(d);
  CHECK(*d == GenusDecomposition{5, 2, 2, false});
  CHECK_FALSE(decompose(5, 7));

  // 16 = 4*4 is already of the ak + b(k-1) form, so the +1 handle is not used.
  auto const e = decompose(5, 16);
  REQUIRE(e);
  CHECK(*e == GenusDecomposition{5, 0, 4, false});
  CHECK(GenusDecomposition{5, 3, 0, true}.genus() == 16);

  auto const lead = decompose(6, 26, true);
  REQUIRE(lead);
  CHECK(*lead == GenusDecomposition{6, 1, 4, false});

  auto const plus = decompose(5, 11);
  REQUIRE(plus);
  CHECK(*plus == GenusDecomposition{5, 2, 0, true});
  CHECK_THROWS_AS(decompose(5, 0), Error);
}

TEST_CASE("decompose agrees with enumeration")
{
  for (unsigned k = 3; k <= 20; ++k) {
    for (unsigned g = 1; g <= 400; ++g) {
      auto const d = decompose(k, g);
      CAPTURE(k);
      CAPTURE(g);
      CHECK(d.has_value() == representable(k, g));
      if (!d)
        continue;
      CHECK(d->genus() == g);
      CHECK_NOTHROW(validate(*d));
      if (!d->plus_one) {
        // maximal a
        for (unsigned a = d->a + 1; a * k <= g; ++a)
          CHECK((g - a * k) % (k - 1) != 0);
      }
      CHECK(decompose(k, g) == d);
      if (auto l = decompose(k, g, true))
        CHECK(l->a >= 1);
    }
  }
}

TEST_CASE("bounds")
{
  CHECK(stable_bound(5) == 8);
  CHECK(stable_bound(6) == 15);
  CHECK_THROWS_AS(stable_bound(4), Error);
  CHECK(theorem1_bound(6) == 26);
  CHECK(theorem1_bound(8) == 50);
  CHECK_THROWS_AS(theorem1_bound(5), Error);
}

TEST_CASE("small genus count")
{
  auto const c5 = count_small_representable(5);
  CHECK(c5.count == 3);
  CHECK(c5.total == 7);
  for (unsigned g = 1; g < 8; ++g)
    CHECK(decompose(5, g).has_value() == (g >= 4 && g <= 6));

  auto const c6 = count_small_representable(6);
  CHECK(c6.total == 14);
  CHECK(c6.count == 7);
  CHECK_THROWS_AS(count_small_representable(4), Error);
}

TEST_CASE("stable range and leading-k range")
{
  for (unsigned k = 5; k <= 40; ++k) {
    for (unsigned g = stable_bound(k); g <= 5000; ++g)
      REQUIRE(decompose(k, g));
    if (k >= 6) {
      for (unsigned g = theorem1_bound(k); g <= 5000; ++g) {
        auto const d = decompose(k, g, true);
        REQUIRE(d);
        CHECK_FALSE(d->plus_one);
      }
    }
  }
}

TEST_CASE("validate")
{
  CHECK_THROWS_AS(validate(GenusDecomposition{5, 0, 0, false}), Error);
  CHECK_THROWS_AS(validate(GenusDecomposition{5, 1, 1, true}), Error);
  CHECK_THROWS_AS(validate(GenusDecomposition{5, 0, 0, true}), Error);
  CHECK_NOTHROW(validate(GenusDecomposition{5, 2, 0, true}));
  CHECK(to_string(GenusDecomposition{5, 2, 2, false}) == "g=18 = 2*5 + 2*4");
}
