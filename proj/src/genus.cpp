#include "torsiongen/genus.hpp"

#include "torsiongen/error.hpp"

namespace torsiongen
{

void validate(GenusDecomposition const &dec)
{
  if (dec.k < 2)
    throw Error(Errc::InvalidDecomposition, "k must be at least 2");
  if (dec.a + dec.b < 1)
    throw Error(Errc::InvalidDecomposition, "decomposition needs at least one piece");
  if (dec.plus_one && (dec.b != 0 || dec.a == 0))
    throw Error(Errc::InvalidDecomposition, "the ak+1 form needs b = 0 and a > 0");
}

std::string to_string(GenusDecomposition const &dec)
{
  std::string s = "g=" + std::to_string(dec.genus()) + " = " + std::to_string(dec.a) + "*" +
                  std::to_string(dec.k);
  if (dec.plus_one)
    return s + " + 1";
  return s + " + " + std::to_string(dec.b) + "*" + std::to_string(dec.k - 1);
}

std::optional<GenusDecomposition> decompose(unsigned k, unsigned g, bool require_leading_k)
{
  if (k < 2 || g < 1)
    throw Error(Errc::RangeError, "decompose needs k >= 2 and g >= 1");

  for (unsigned a = g / k + 1; a-- > 0;) {
    if (require_leading_k && a == 0)
      break;
    unsigned const rest = g - a * k;
    if (rest % (k - 1) == 0)
      return GenusDecomposition{k, a, rest / (k - 1), false};
  }

  if (g > 1 && (g - 1) % k == 0)
    return GenusDecomposition{k, (g - 1) / k, 0, true};

  return std::nullopt;
}

unsigned stable_bound(unsigned k)
{
  if (k < 5)
    throw Error(Errc::RangeError, "stable bound is stated for k >= 5");
  return (k - 1) * (k - 3);
}

SmallGenusCount count_small_representable(unsigned k)
{
  unsigned const bound = stable_bound(k);
  SmallGenusCount c;
  for (unsigned g = 1; g < bound; ++g) {
    ++c.total;
    if (decompose(k, g))
      ++c.count;
  }
  return c;
}

unsigned theorem1_bound(unsigned k)
{
  if (k < 6)
    throw Error(Errc::RangeError, "three-element bound is stated for k >= 6");
  return (k - 1) * (k - 1) + 1;
}

} // namespace torsiongen
