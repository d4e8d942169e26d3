#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsiongen/curves.hpp"

namespace torsiongen
{

/// A generator letter (f, g, h, or f' = T(gamma2) f T(gamma2)^-1) or a twist
/// T(c), each with exponent +1 or -1.
struct Token
{
  enum Kind
  {
    Gen,
    Twist
  };

  Kind kind = Gen;
  std::string gen;
  CurveLabel curve;
  int exp = 1;

  static Token generator(std::string name, int exp = 1) { return {Gen, std::move(name), {}, exp}; }
  static Token twist(CurveLabel c, int exp = 1) { return {Twist, {}, c, exp}; }

  Token inverse() const
  {
    Token t = *this;
    t.exp = -t.exp;
    return t;
  }

  bool operator==(Token const &) const = default;
};

using TwistWord = std::vector<Token>;

std::string to_string(Token const &t);
std::string to_string(TwistWord const &w);
TwistWord inverse(TwistWord const &w);
TwistWord free_reduce(TwistWord const &w);

/// Exponents are +-1 and generator letters are among f, g, h, f'.
bool well_formed(TwistWord const &w);

/// Expands a generator word into unit letters.
TwistWord letters(GenWord const &w);

/// T(alpha1) T(alpha2) T(x1) T(gamma2) (T(gamma1) T(x3) T(x2))^-1.
TwistWord lantern_relator();

/// Declared disjointness among the seven lantern curves: each boundary curve
/// (alpha1, alpha2, x1, gamma2) misses every other lantern curve; the interior
/// curves gamma1, x3, x2 meet pairwise. Nothing is declared about other curves.
bool declared_disjoint(CurveLabel a, CurveLabel b);

enum class Rule
{
  FreeReduction, // always permitted
  Definition,    // T(gamma2) f^e T(gamma2)^-1 <-> f'^e, always permitted
  Lantern,
  Commute,
  Conjugate,
};

std::string to_string(Rule r);

struct RuleSet
{
  bool lantern = true;
  bool commute = true;
  bool conjugate = true;
};

/// Replace `removed` tokens at `pos` with `inserted`.
struct RewriteStep
{
  Rule claimed = Rule::FreeReduction;
  std::size_t pos = 0;
  std::size_t removed = 0;
  TwistWord inserted;
};

struct LanternProof
{
  TwistWord start;
  std::vector<RewriteStep> steps;
  std::vector<TwistWord> lines; // word after each step
  std::vector<Rule> matched;    // rule that validated each step
  TwistWord result;
};

/// The rule under which u may be rewritten to v, trying the always-permitted
/// rules first, then the enabled ones in declaration order.
std::optional<Rule> match_rule(ActionTable const &table, RuleSet rules, TwistWord const &u,
                               TwistWord const &v);

/// The derivation script for T(alpha1), unchecked.
LanternProof lantern_derivation(ActionTable const &table);

/// Checks every step of a script; throws RewriteStepInvalid on the first that
/// no enabled rule accepts.
LanternProof replay(ActionTable const &table, LanternProof script, RuleSet rules = {});

/// Builds and replays the derivation. Throws HypothesisFailure if the lemma's
/// hypotheses do not hold on the table.
LanternProof verify_lantern_word(ActionTable const &table, RuleSet rules = {});

} // namespace torsiongen
