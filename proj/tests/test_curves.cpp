#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "torsiongen/error.hpp"
#include "torsiongen/lantern.hpp"

using namespace torsiongen;

namespace
{

ActionTable four(unsigned k, unsigned g)
{
  auto const d = admissible_decomposition(k, g, Construction::Four);
  REQUIRE(d);
  return build_action_four(k, *d);
}

ActionTable three(unsigned k, unsigned g)
{
  auto const d = admissible_decomposition(k, g, Construction::Three);
  REQUIRE(d);
  return build_action_three(k, *d);
}

std::string slurp(std::string const &path)
{
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
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

// Cycle lengths of a generator on its labeled curves must divide its order.
void check_cycles(GeneratorAction const &a)
{
  std::map<CurveLabel, CurveLabel> next;
  for (auto const &[x, y] : a.map()) {
    CHECK(next.count(x) == 0);
    next[x] = y;
  }
  std::map<CurveLabel, int> indeg;
  for (auto const &[x, y] : next)
    CHECK(++indeg[y] == 1);
  for (auto const &[start, _] : next) {
    CurveLabel c = start;
    unsigned len = 0;
    bool closed = false;
    while (next.count(c) && len <= a.order) {
      c = next[c];
      ++len;
      if (c == start) {
        closed = true;
        break;
      }
    }
    if (closed)
      CHECK(a.order % len == 0);
  }
}

} // namespace

TEST_CASE("labels")
{
  for (auto s : {"alpha:1", "beta:12", "gamma:4", "xgamma:5", "lantern:x3"})
    CHECK(to_string(parse_label(s)) == s);
  CHECK(code_of([] { parse_label("beta12"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_label("delta:1"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_label("lantern:x4"); }) == Errc::ParseError);
  CHECK(is_humphries(alpha(2)));
  CHECK_FALSE(is_humphries(lantern_x(1)));
  CHECK(is_humphries(xgamma(5)));
}

TEST_CASE("generator words")
{
  auto const w = parse_gen_word("f^-2 g^3");
  REQUIRE(w.size() == 2);
  CHECK(w[0] == Letter{"f", -2});
  CHECK(to_string(w) == "f^-2 g^3");
  CHECK(to_string(inverse(w)) == "g^-3 f^2");
  CHECK(code_of([] { parse_gen_word("f^x"); }) == Errc::ParseError);
}

TEST_CASE("four-element tables, genus 18")
{
  auto const t = four(5, 18);
  CHECK(t.genus() == 18);
  CHECK(t.dec == GenusDecomposition{5, 2, 2, false});
  auto const *f = t.find("f");
  auto const *g = t.find("g");
  auto const *h = t.find("h");
  REQUIRE(f);
  REQUIRE(g);
  REQUIRE(h);

  // f cycles the first piece's betas.
  CHECK(f->image(beta(1)) == beta(2));
  CHECK(f->image(beta(5)) == beta(1));
  CHECK(f->image(beta(1), 5) == beta(1));
  // f(alpha1) = alpha2 when the first piece has genus k.
  CHECK(f->image(alpha(1)) == alpha(2));
  // g takes the second-to-last beta of the first piece to the excluded gamma.
  CHECK(g->image(beta(4)) == xgamma(5));
  CHECK(g->image(xgamma(5)) == beta(7));
  CHECK(g->image(torsiongen::gamma(2)) == alpha(2));
  CHECK(h->image(torsiongen::gamma(2), 2) == beta(4));

  std::size_t humphries = 0;
  for (auto const &c : t.labels)
    humphries += is_humphries(c);
  CHECK(humphries == 2 * 18 + 1);

  for (auto const &a : t.generators) {
    CHECK_NOTHROW(validate(a));
    check_cycles(a);
  }

  auto const cert = certify_single_orbit(t);
  CHECK(cert.single_orbit);
  CHECK(verify_lantern_hypotheses(t));

  auto const cut = certify_single_orbit(drop_edges(t, EdgeFamily::H));
  CHECK_FALSE(cut.single_orbit);
  CHECK(cut.components.size() >= 2);
}

TEST_CASE("four-element table with a leading genus k-1 piece")
{
  auto const t = build_action_four(5, GenusDecomposition{5, 0, 3, false});
  CHECK(t.find("f")->image(alpha(1)) == torsiongen::gamma(1));
  CHECK(certify_single_orbit(t).single_orbit);
  CHECK(verify_lantern_hypotheses(t));
}

TEST_CASE("four-element table with the axis handle")
{
  auto const t = build_action_four(5, GenusDecomposition{5, 3, 0, true});
  CHECK(t.genus() == 16);
  CHECK(t.find("g")->image(torsiongen::gamma(2)) == beta(16));
  CHECK(certify_single_orbit(t).single_orbit);
  CHECK(verify_lantern_hypotheses(t));
  CHECK_NOTHROW(verify_lantern_word(t));
}

TEST_CASE("three-element tables")
{
  auto const t = three(8, 21);
  CHECK(t.dec == GenusDecomposition{8, 0, 3, false});
  CHECK(t.find("h") == nullptr);
  CHECK(to_string(t.roles.h) == "f^-2 g^3");
  std::size_t g_blocks = 0;
  for (auto const &tr : t.find("g")->tracks) {
    if (tr.family != "g-G")
      continue;
    ++g_blocks;
    std::size_t filled = 0;
    for (auto const &s : tr.slots)
      filled += s.has_value();
    CHECK(filled == 4);
  }
  CHECK(g_blocks == 2);
  CHECK(certify_single_orbit(t).single_orbit);
  CHECK(verify_lantern_hypotheses(t));
  // g^3 (x2, alpha2) = (gamma3, gamma4), f^-2 (gamma3, gamma4) = (gamma1, gamma2)
  CHECK(t.apply(parse_gen_word("g^3"), lantern_x(2)) == torsiongen::gamma(3));
  CHECK(t.apply(parse_gen_word("g^3"), alpha(2)) == torsiongen::gamma(4));
  CHECK(t.apply(parse_gen_word("f^-2"), torsiongen::gamma(3)) == torsiongen::gamma(1));
  CHECK(t.apply(parse_gen_word("f^-2"), torsiongen::gamma(4)) == torsiongen::gamma(2));

  auto const six = three(6, 25);
  CHECK(to_string(six.roles.g) == "g^2");
  CHECK(to_string(six.roles.h) == "g^4");
  // Lantern images under g: (x3, x1) -> (gamma1, gamma2) after two steps,
  // (x2, alpha2) after four.
  CHECK(six.apply(parse_gen_word("g^2"), lantern_x(3)) == torsiongen::gamma(1));
  CHECK(six.apply(parse_gen_word("g^2"), lantern_x(1)) == torsiongen::gamma(2));
  CHECK(six.apply(parse_gen_word("g^4"), lantern_x(2)) == torsiongen::gamma(1));
  CHECK(six.apply(parse_gen_word("g^4"), alpha(2)) == torsiongen::gamma(2));
  CHECK(certify_single_orbit(six).single_orbit);

  CHECK(code_of([] { build_action_three(5, GenusDecomposition{5, 2, 2, false}); }) ==
        Errc::UnsupportedK);
  CHECK(code_of([] { build_action_three(7, GenusDecomposition{7, 0, 4, false}); }) ==
        Errc::UnsupportedK);
  CHECK(code_of([] { build_action_three(8, GenusDecomposition{8, 2, 0, true}); }) ==
        Errc::PlusOneUnsupported);
  CHECK(code_of([] { build_action_four(4, GenusDecomposition{4, 2, 0, false}); }) ==
        Errc::RangeError);
  CHECK_FALSE(admissible_decomposition(7, 24, Construction::Three));
  CHECK(admissible_decomposition(7, 13, Construction::Three));
}

TEST_CASE("hypotheses negative controls")
{
  auto t = four(5, 18);
  // Redirect f(gamma1) by blanking gamma2 on f's tracks.
  for (auto &gen : t.generators) {
    if (gen.name != "f")
      continue;
    for (auto &tr : gen.tracks) {
      for (auto &s : tr.slots) {
        if (s == torsiongen::gamma(2))
          s.reset();
      }
    }
  }
  CHECK_FALSE(verify_lantern_hypotheses(t));
  CHECK(code_of([&] { verify_lantern_word(t); }) == Errc::HypothesisFailure);

  auto missing = four(5, 18);
  missing.labels.erase(std::remove(missing.labels.begin(), missing.labels.end(), lantern_x(2)),
                       missing.labels.end());
  CHECK(code_of([&] { verify_lantern_hypotheses(missing); }) == Errc::MissingLanternData);
}

TEST_CASE("orbit and lantern checks across admissible genera")
{
  for (Construction c : {Construction::Four, Construction::Three}) {
    for (unsigned k = 5; k <= 12; ++k) {
      for (unsigned g = 1; g <= 120; ++g) {
        auto const d = admissible_decomposition(k, g, c);
        if (!d)
          continue;
        auto const t = c == Construction::Four ? build_action_four(k, *d)
                                               : build_action_three(k, *d);
        CAPTURE(k);
        CAPTURE(g);
        CAPTURE(to_string(c));
        CHECK(certify_single_orbit(t).single_orbit);
        CHECK(verify_lantern_hypotheses(t));
        for (auto const &a : t.generators)
          check_cycles(a);
        if (d->pieces() >= 2) {
          for (EdgeFamily e : {EdgeFamily::FAlpha, EdgeFamily::GBlocks, EdgeFamily::H})
            CHECK_FALSE(certify_single_orbit(drop_edges(t, e)).single_orbit);
        }
      }
    }
  }
}

TEST_CASE("lantern word replay")
{
  auto const t = four(5, 18);
  auto const proof = verify_lantern_word(t);
  CHECK(to_string(proof.result) == "f^-1 f' g^-1 f^-1 f' g h f^-1 f' h^-1");
  CHECK(well_formed(proof.result));
  CHECK(proof.lines.size() == proof.steps.size());
  CHECK(proof.start == TwistWord{Token::twist(alpha(1))});
  for (auto const &tok : proof.result)
    CHECK(tok.kind == Token::Gen);

  // Rules used: each of the three permitted ones appears, and nothing else
  // beyond free reduction and the definition of f'.
  bool seen[5] = {};
  for (Rule r : proof.matched)
    seen[static_cast<int>(r)] = true;
  CHECK(seen[static_cast<int>(Rule::Lantern)]);
  CHECK(seen[static_cast<int>(Rule::Commute)]);
  CHECK(seen[static_cast<int>(Rule::Conjugate)]);

  for (RuleSet r : {RuleSet{false, true, true}, RuleSet{true, false, true},
                    RuleSet{true, true, false}, RuleSet{false, false, false}})
    CHECK(code_of([&] { verify_lantern_word(t, r); }) == Errc::RewriteStepInvalid);

  auto const t3 = three(8, 21);
  auto const p3 = verify_lantern_word(t3);
  CHECK(well_formed(p3.result));
  CHECK(to_string(p3.result) ==
        "f^-1 f' g^-1 f^-1 f' g g^-1 g^-1 g^-1 f f f^-1 f' f^-1 f^-1 g g g");

  // A corrupted step is rejected.
  auto bad = lantern_derivation(t);
  bad.steps[1].inserted = {bad.steps[1].inserted[1], bad.steps[1].inserted[0],
                           Token::twist(beta(3))};
  bad.steps[1].removed = 2;
  CHECK(code_of([&] { replay(t, bad); }) == Errc::RewriteStepInvalid);
}

TEST_CASE("relator and disjointness")
{
  auto const r = lantern_relator();
  CHECK(r.size() == 7);
  CHECK(free_reduce(TwistWord{Token::twist(beta(1)), Token::twist(beta(1), -1)}).empty());
  CHECK(to_string(TwistWord{}) == "1");
  CHECK(declared_disjoint(alpha(1), torsiongen::gamma(1)));
  CHECK(declared_disjoint(lantern_x(1), torsiongen::gamma(2)));
  CHECK_FALSE(declared_disjoint(torsiongen::gamma(1), lantern_x(3)));
  CHECK_FALSE(declared_disjoint(alpha(1), beta(1)));
  CHECK_FALSE(declared_disjoint(alpha(1), alpha(1)));
}

TEST_CASE("shipped action tables match the generator")
{
  std::string const dir = TORSIONGEN_DATA_DIR;
  auto const four_text = slurp(dir + "/actions/k5_g18_four.json");
  auto const three_text = slurp(dir + "/actions/k8_g21_three.json");
  CHECK(table_from_json(four_text) == four(5, 18));
  CHECK(table_from_json(three_text) == three(8, 21));
  CHECK(to_json(four(5, 18)) == four_text);
  CHECK(to_json(three(8, 21)) == three_text);
  CHECK(code_of([] { table_from_json("{}"); }) == Errc::ParseError);
}
