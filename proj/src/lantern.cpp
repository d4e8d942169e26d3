#include "torsiongen/lantern.hpp"

#include <algorithm>

#include "torsiongen/error.hpp"

namespace torsiongen
{

std::string to_string(Token const &t)
{
  std::string s = t.kind == Token::Gen ? t.gen : "T(" + to_string(t.curve) + ")";
  if (t.exp != 1)
    s += "^" + std::to_string(t.exp);
  return s;
}

std::string to_string(TwistWord const &w)
{
  if (w.empty())
    return "1";
  std::string s;
  for (auto const &t : w) {
    if (!s.empty())
      s += ' ';
    s += to_string(t);
  }
  return s;
}

TwistWord inverse(TwistWord const &w)
{
  TwistWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back(it->inverse());
  return r;
}

TwistWord free_reduce(TwistWord const &w)
{
  TwistWord r;
  for (auto const &t : w) {
    if (!r.empty() && r.back() == t.inverse())
      r.pop_back();
    else
      r.push_back(t);
  }
  return r;
}

bool well_formed(TwistWord const &w)
{
  return std::all_of(w.begin(), w.end(), [](Token const &t) {
    if (t.exp != 1 && t.exp != -1)
      return false;
    if (t.kind == Token::Twist)
      return true;
    return t.gen == "f" || t.gen == "g" || t.gen == "h" || t.gen == "f'";
  });
}

TwistWord letters(GenWord const &w)
{
  TwistWord r;
  for (auto const &l : w) {
    int const sign = l.exp < 0 ? -1 : 1;
    for (int i = 0; i < l.exp * sign; ++i)
      r.push_back(Token::generator(l.gen, sign));
  }
  return r;
}

TwistWord lantern_relator()
{
  return {Token::twist(alpha(1)),         Token::twist(alpha(2)),
          Token::twist(lantern_x(1)),     Token::twist(gamma(2)),
          Token::twist(lantern_x(2), -1), Token::twist(lantern_x(3), -1),
          Token::twist(gamma(1), -1)};
}

bool declared_disjoint(CurveLabel a, CurveLabel b)
{
  auto boundary = [](CurveLabel c) {
    return c == alpha(1) || c == alpha(2) || c == lantern_x(1) || c == gamma(2);
  };
  auto interior = [](CurveLabel c) {
    return c == gamma(1) || c == lantern_x(3) || c == lantern_x(2);
  };
  bool const both_lantern = (boundary(a) || interior(a)) && (boundary(b) || interior(b));
  return both_lantern && a != b && (boundary(a) || boundary(b));
}

std::string to_string(Rule r)
{
  switch (r) {
    case Rule::FreeReduction: return "free";
    case Rule::Definition: return "definition";
    case Rule::Lantern: return "lantern";
    case Rule::Commute: return "commute";
    case Rule::Conjugate: return "conjugate";
  }
  return "free";
}

namespace
{

bool is_cyclic_conjugate(TwistWord const &w, TwistWord const &r)
{
  if (w.size() != r.size())
    return false;
  for (std::size_t shift = 0; shift < r.size(); ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < r.size() && same; ++i)
      same = w[i] == r[(i + shift) % r.size()];
    if (same)
      return true;
  }
  return false;
}

bool lantern_step(TwistWord const &u, TwistWord const &v)
{
  TwistWord w = u;
  auto const vi = inverse(v);
  w.insert(w.end(), vi.begin(), vi.end());
  w = free_reduce(w);
  while (w.size() >= 2 && w.front() == w.back().inverse()) {
    w.erase(w.begin());
    w.pop_back();
  }
  auto const r = lantern_relator();
  return is_cyclic_conjugate(w, r) || is_cyclic_conjugate(w, inverse(r));
}

bool commute_step(TwistWord const &u, TwistWord const &v)
{
  return u.size() == 2 && v.size() == 2 && u[0].kind == Token::Twist &&
         u[1].kind == Token::Twist && v[0] == u[1] && v[1] == u[0] &&
         declared_disjoint(u[0].curve, u[1].curve);
}

// T(c)^e -> X^-1 T(X(c))^e X.
bool conjugate_one_way(ActionTable const &table, TwistWord const &u, TwistWord const &v)
{
  if (u.size() != 1 || u[0].kind != Token::Twist || v.size() < 3 || v.size() % 2 == 0)
    return false;
  std::size_t const half = v.size() / 2;
  Token const &mid = v[half];
  if (mid.kind != Token::Twist || mid.exp != u[0].exp)
    return false;

  TwistWord const pre(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(half));
  TwistWord const post(v.begin() + static_cast<std::ptrdiff_t>(half) + 1, v.end());
  if (pre != inverse(post))
    return false;

  GenWord x;
  for (auto const &t : post) {
    if (t.kind != Token::Gen)
      return false;
    x.push_back({t.gen, t.exp});
  }
  return table.apply(x, u[0].curve) == mid.curve;
}

bool definition_one_way(TwistWord const &u, TwistWord const &v)
{
  return u.size() == 3 && v.size() == 1 && u[0] == Token::twist(gamma(2)) &&
         u[2] == Token::twist(gamma(2), -1) && u[1].kind == Token::Gen && u[1].gen == "f" &&
         v[0] == Token::generator("f'", u[1].exp);
}

} // namespace

std::optional<Rule> match_rule(ActionTable const &table, RuleSet rules, TwistWord const &u,
                               TwistWord const &v)
{
  if (free_reduce(u) == free_reduce(v))
    return Rule::FreeReduction;
  if (definition_one_way(u, v) || definition_one_way(v, u))
    return Rule::Definition;
  if (rules.lantern && lantern_step(u, v))
    return Rule::Lantern;
  if (rules.commute && commute_step(u, v))
    return Rule::Commute;
  if (rules.conjugate && (conjugate_one_way(table, u, v) || conjugate_one_way(table, v, u)))
    return Rule::Conjugate;
  return std::nullopt;
}

namespace
{

class Script
{
public:
  explicit Script(TwistWord start)
  {
    _proof.start = start;
    _cur = std::move(start);
  }

  TwistWord const &word() const { return _cur; }

  void rewrite(Rule rule, std::size_t pos, std::size_t removed, TwistWord inserted)
  {
    RewriteStep s{rule, pos, removed, std::move(inserted)};
    _cur = apply(_cur, s);
    _proof.steps.push_back(std::move(s));
  }

  std::size_t find(Token const &t, std::size_t from = 0) const
  {
    for (std::size_t i = from; i < _cur.size(); ++i) {
      if (_cur[i] == t)
        return i;
    }
    throw Error(Errc::RewriteStepInvalid, "derivation lost track of " + to_string(t));
  }

  static TwistWord apply(TwistWord const &w, RewriteStep const &s)
  {
    if (s.pos + s.removed > w.size())
      throw Error(Errc::RewriteStepInvalid, "step reaches past the end of the word");
    TwistWord r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s.pos));
    r.insert(r.end(), s.inserted.begin(), s.inserted.end());
    r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(s.pos + s.removed), w.end());
    return r;
  }

  LanternProof take() &&
  {
    _proof.result = _cur;
    return std::move(_proof);
  }

private:
  LanternProof _proof;
  TwistWord _cur;
};

TwistWord conjugated(GenWord const &x, CurveLabel image, int exp)
{
  TwistWord const xs = letters(x);
  TwistWord r = inverse(xs);
  r.push_back(Token::twist(image, exp));
  r.insert(r.end(), xs.begin(), xs.end());
  return r;
}

// Rewrite T(c)^exp at pos as X^-1 T(X(c))^exp X.
void conjugate_at(Script &s, ActionTable const &table, GenWord const &x, std::size_t pos)
{
  Token const t = s.word()[pos];
  auto const image = table.apply(x, t.curve);
  if (!image)
    throw Error(Errc::HypothesisFailure,
                to_string(x) + " does not move " + to_string(t.curve) + " to a tabled curve");
  s.rewrite(Rule::Conjugate, pos, 1, conjugated(x, *image, t.exp));
}

} // namespace

LanternProof lantern_derivation(ActionTable const &table)
{
  auto const &roles = table.roles;
  auto T = [](CurveLabel c, int e = 1) { return Token::twist(c, e); };

  Script s({T(alpha(1))});

  // Lantern relation solved for T(alpha1).
  s.rewrite(Rule::Lantern, 0, 1,
            {T(gamma(1)), T(lantern_x(3)), T(lantern_x(2)), T(gamma(2), -1),
             T(lantern_x(1), -1), T(alpha(2), -1)});

  // Regroup into (T g1 T g2^-1)(T x3 T x1^-1)(T x2 T a2^-1).
  auto swap_at = [&](std::size_t pos) {
    s.rewrite(Rule::Commute, pos, 2, {s.word()[pos + 1], s.word()[pos]});
  };
  swap_at(s.find(T(lantern_x(2))));
  swap_at(s.find(T(lantern_x(3))));
  swap_at(s.find(T(lantern_x(2))));

  // Pull each pair back to (gamma1, gamma2) through G and H.
  auto pull_back = [&](GenWord const &x, CurveLabel first, CurveLabel second) {
    std::size_t const pos = s.find(T(first));
    std::size_t const len = letters(x).size();
    conjugate_at(s, table, x, pos);
    conjugate_at(s, table, x, s.find(T(second, -1), pos));
    // X^-1 T X X^-1 T^-1 X: cancel the inner X X^-1.
    s.rewrite(Rule::FreeReduction, pos + len + 1, 2 * len, {});
  };
  pull_back(roles.g, lantern_x(3), lantern_x(1));
  pull_back(roles.h, lantern_x(2), alpha(2));

  // T(gamma1) = f^-1 T(gamma2) f, then fold T(gamma2) f T(gamma2)^-1 into f'.
  for (std::size_t from = 0;;) {
    std::size_t pos = s.word().size();
    for (std::size_t i = from; i < s.word().size(); ++i) {
      if (s.word()[i] == T(gamma(1))) {
        pos = i;
        break;
      }
    }
    if (pos == s.word().size())
      break;
    conjugate_at(s, table, roles.f, pos);
    std::size_t const fl = letters(roles.f).size();
    std::size_t const twist = pos + fl;
    s.rewrite(Rule::Definition, twist, 3, {Token::generator("f'")});
    from = twist + 1;
  }

  return std::move(s).take();
}

LanternProof replay(ActionTable const &table, LanternProof script, RuleSet rules)
{
  script.lines.clear();
  script.matched.clear();
  TwistWord cur = script.start;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    auto const &st = script.steps[i];
    if (st.pos + st.removed > cur.size())
      throw Error(Errc::RewriteStepInvalid, "step " + std::to_string(i + 1) +
                                              " reaches past the end of the word");
    TwistWord const u(cur.begin() + static_cast<std::ptrdiff_t>(st.pos),
                      cur.begin() + static_cast<std::ptrdiff_t>(st.pos + st.removed));
    auto const rule = match_rule(table, rules, u, st.inserted);
    if (!rule)
      throw Error(Errc::RewriteStepInvalid,
                  "step " + std::to_string(i + 1) + " (" + to_string(st.claimed) + "): " +
                    to_string(u) + " -> " + to_string(st.inserted) +
                    " matches no permitted rule");
    cur = Script::apply(cur, st);
    script.lines.push_back(cur);
    script.matched.push_back(*rule);
  }
  script.result = cur;
  return script;
}

LanternProof verify_lantern_word(ActionTable const &table, RuleSet rules)
{
  if (!verify_lantern_hypotheses(table))
    throw Error(Errc::HypothesisFailure, "lantern lemma hypotheses fail on the action tables");
  return replay(table, lantern_derivation(table), rules);
}

} // namespace torsiongen
