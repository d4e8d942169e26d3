#include "torsiongen/curves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "torsiongen/error.hpp"

namespace torsiongen
{

namespace
{

std::string_view kind_prefix(CurveKind k)
{
  switch (k) {
    case CurveKind::Alpha: return "alpha";
    case CurveKind::Beta: return "beta";
    case CurveKind::Gamma: return "gamma";
    case CurveKind::ExcludedGamma: return "xgamma";
    case CurveKind::Lantern: return "lantern";
  }
  return "beta";
}

long long floor_mod(long long x, long long m)
{
  return ((x % m) + m) % m;
}

} // namespace

std::string to_string(CurveLabel c)
{
  std::string s(kind_prefix(c.kind));
  s += ':';
  if (c.kind == CurveKind::Lantern)
    s += 'x';
  return s + std::to_string(c.index);
}

CurveLabel parse_label(std::string_view s)
{
  auto const colon = s.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::ParseError, "curve label without ':' in '" + std::string(s) + "'");

  auto const head = s.substr(0, colon);
  auto tail = s.substr(colon + 1);

  CurveLabel c;
  if (head == "alpha")
    c.kind = CurveKind::Alpha;
  else if (head == "beta")
    c.kind = CurveKind::Beta;
  else if (head == "gamma")
    c.kind = CurveKind::Gamma;
  else if (head == "xgamma")
    c.kind = CurveKind::ExcludedGamma;
  else if (head == "lantern")
    c.kind = CurveKind::Lantern;
  else
    throw Error(Errc::ParseError, "unknown curve kind '" + std::string(head) + "'");

  if (c.kind == CurveKind::Lantern) {
    if (tail.empty() || tail.front() != 'x')
      throw Error(Errc::ParseError, "lantern labels are x1, x2, x3");
    tail.remove_prefix(1);
  }
  if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](char ch) {
        return ch >= '0' && ch <= '9';
      }))
    throw Error(Errc::ParseError, "bad curve index in '" + std::string(s) + "'");

  c.index = static_cast<unsigned>(std::stoul(std::string(tail)));
  if (c.index == 0 || (c.kind == CurveKind::Lantern && c.index > 3))
    throw Error(Errc::ParseError, "curve index out of range in '" + std::string(s) + "'");
  return c;
}

bool is_humphries(CurveLabel c)
{
  switch (c.kind) {
    case CurveKind::Alpha: return c.index <= 2;
    case CurveKind::Beta:
    case CurveKind::Gamma:
    case CurveKind::ExcludedGamma: return true;
    case CurveKind::Lantern: return false;
  }
  return false;
}

std::optional<CurveLabel> GeneratorAction::image(CurveLabel c, long long e) const
{
  for (auto const &t : tracks) {
    auto const n = static_cast<long long>(t.slots.size());
    for (long long i = 0; i < n; ++i) {
      if (t.slots[i] == c)
        return t.slots[floor_mod(i + e, n)];
    }
  }
  return std::nullopt;
}

std::vector<std::pair<CurveLabel, CurveLabel>> GeneratorAction::map() const
{
  std::vector<std::pair<CurveLabel, CurveLabel>> m;
  for (auto const &t : tracks) {
    std::size_t const n = t.slots.size();
    for (std::size_t i = 0; i < n; ++i) {
      auto const &from = t.slots[i];
      auto const &to = t.slots[(i + 1) % n];
      if (from && to)
        m.emplace_back(*from, *to);
    }
  }
  std::sort(m.begin(), m.end());
  return m;
}

void validate(GeneratorAction const &action)
{
  if (action.order < 2)
    throw Error(Errc::InvalidParams, "generator '" + action.name + "' needs order >= 2");

  std::set<CurveLabel> seen;
  for (auto const &t : action.tracks) {
    if (t.slots.size() != action.order)
      throw Error(Errc::InvalidParams, "track of '" + action.name + "' has " +
                                         std::to_string(t.slots.size()) + " slots, expected " +
                                         std::to_string(action.order));
    for (auto const &s : t.slots) {
      if (s && !seen.insert(*s).second)
        throw Error(Errc::InvalidParams,
                    "'" + action.name + "' is not injective at " + to_string(*s));
    }
  }
}

std::string to_string(GenWord const &w)
{
  std::string s;
  for (auto const &l : w) {
    if (!s.empty())
      s += ' ';
    s += l.gen;
    if (l.exp != 1)
      s += "^" + std::to_string(l.exp);
  }
  return s;
}

GenWord parse_gen_word(std::string_view s)
{
  GenWord w;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == ' ') {
      ++pos;
      continue;
    }
    std::size_t end = s.find(' ', pos);
    if (end == std::string_view::npos)
      end = s.size();
    auto const tok = s.substr(pos, end - pos);
    auto const caret = tok.find('^');
    Letter l;
    l.gen = std::string(tok.substr(0, caret));
    if (caret != std::string_view::npos) {
      try {
        l.exp = std::stoi(std::string(tok.substr(caret + 1)));
      } catch (std::exception const &) {
        throw Error(Errc::ParseError, "bad exponent in '" + std::string(tok) + "'");
      }
    }
    if (l.gen.empty() || l.exp == 0)
      throw Error(Errc::ParseError, "bad word letter '" + std::string(tok) + "'");
    w.push_back(std::move(l));
    pos = end;
  }
  return w;
}

GenWord inverse(GenWord const &w)
{
  GenWord r(w.rbegin(), w.rend());
  for (auto &l : r)
    l.exp = -l.exp;
  return r;
}

std::string to_string(Construction c)
{
  return c == Construction::Four ? "four" : "three";
}

Construction construction_from_string(std::string const &s)
{
  if (s == "four")
    return Construction::Four;
  if (s == "three")
    return Construction::Three;
  throw Error(Errc::InvalidParams, "variant must be 'four' or 'three', got '" + s + "'");
}

GeneratorAction const *ActionTable::find(std::string_view name) const
{
  for (auto const &g : generators) {
    if (g.name == name)
      return &g;
  }
  return nullptr;
}

std::optional<CurveLabel> ActionTable::apply(GenWord const &w, CurveLabel c) const
{
  // Runs g^a g^b act as g^(a+b); the tracks know powers exactly even where
  // single steps pass through unlabeled curves.
  GenWord runs;
  for (auto const &l : w) {
    if (!runs.empty() && runs.back().gen == l.gen)
      runs.back().exp += l.exp;
    else
      runs.push_back(l);
  }

  std::optional<CurveLabel> cur = c;
  for (auto it = runs.rbegin(); it != runs.rend() && cur; ++it) {
    auto const *gen = find(it->gen);
    if (!gen)
      return std::nullopt;
    cur = gen->image(*cur, it->exp);
  }
  return cur;
}

bool ActionTable::operator==(ActionTable const &o) const
{
  return to_json(*this) == to_json(o);
}

namespace
{

// Humphries indices of the curves in one sub-chain F_i.
struct Chain
{
  unsigned genus = 0;
  std::vector<unsigned> betas;
  std::vector<unsigned> gammas;
  std::optional<unsigned> excluded_after;
};

struct Layout
{
  unsigned k = 0;
  unsigned g = 0;
  GenusDecomposition dec;
  std::vector<Chain> chains;
};

Layout lay_out(unsigned k, GenusDecomposition const &dec)
{
  validate(dec);
  if (dec.k != k)
    throw Error(Errc::InvalidDecomposition, "decomposition was built for k=" +
                                              std::to_string(dec.k) + ", not k=" +
                                              std::to_string(k));
  Layout l{k, dec.genus(), dec, {}};
  unsigned s = 0;
  for (unsigned p = 0; p < dec.pieces(); ++p) {
    Chain c;
    c.genus = dec.piece_genus(p);
    for (unsigned j = 1; j <= c.genus; ++j)
      c.betas.push_back(s + j);
    for (unsigned j = 1; j < c.genus; ++j)
      c.gammas.push_back(s + j);
    s += c.genus;
    if (p + 1 < dec.pieces())
      c.excluded_after = s;
    l.chains.push_back(std::move(c));
  }
  return l;
}

std::vector<CurveLabel> label_set(Layout const &l, bool with_alpha_ell)
{
  std::vector<CurveLabel> labels{alpha(1), alpha(2)};
  if (with_alpha_ell)
    labels.push_back(alpha(l.chains.front().genus));
  std::set<unsigned> excluded;
  for (auto const &c : l.chains) {
    if (c.excluded_after)
      excluded.insert(*c.excluded_after);
  }
  for (unsigned i = 1; i <= l.g; ++i)
    labels.push_back(beta(i));
  for (unsigned i = 1; i < l.g; ++i)
    labels.push_back(excluded.count(i) ? xgamma(i) : gamma(i));
  for (unsigned i = 1; i <= 3; ++i)
    labels.push_back(lantern_x(i));
  std::sort(labels.begin(), labels.end());
  return labels;
}

Track make_track(std::string family, unsigned k, std::vector<std::pair<unsigned, CurveLabel>> at)
{
  Track t{std::move(family), std::vector<Slot>(k)};
  for (auto const &[i, c] : at) {
    if (i >= k)
      throw Error(Errc::InvalidParams, "slot " + std::to_string(i) + " does not fit order " +
                                         std::to_string(k));
    t.slots[i] = c;
  }
  return t;
}

Track run_track(std::string family, unsigned k, std::vector<CurveLabel> const &run)
{
  std::vector<std::pair<unsigned, CurveLabel>> at;
  for (unsigned i = 0; i < run.size(); ++i)
    at.emplace_back(i, run[i]);
  return make_track(std::move(family), k, at);
}

std::vector<CurveLabel> betas_of(Chain const &c)
{
  std::vector<CurveLabel> v;
  for (unsigned i : c.betas)
    v.push_back(beta(i));
  return v;
}

std::vector<CurveLabel> gammas_of(Chain const &c)
{
  std::vector<CurveLabel> v;
  for (unsigned i : c.gammas)
    v.push_back(gamma(i));
  return v;
}

// f: each F_i chain carried onto the local chain of sigma_i.
GeneratorAction build_f(Layout const &l, bool alpha_ell)
{
  unsigned const k = l.k;
  GeneratorAction f{"f", k, {}};

  for (std::size_t p = 0; p < l.chains.size(); ++p) {
    auto const &c = l.chains[p];
    f.tracks.push_back(run_track("f-beta", k, betas_of(c)));

    auto gammas = gammas_of(c);
    if (p == 0 && c.genus == k - 1) {
      // sigma_1 of genus k-1: alpha_1 sits one step before gamma_1.
      gammas.insert(gammas.begin(), alpha(1));
      if (alpha_ell)
        gammas.insert(gammas.begin(), alpha(c.genus));
    }
    f.tracks.push_back(run_track("f-gamma", k, gammas));

    if (p == 0 && c.genus == k) {
      std::vector<CurveLabel> alphas{alpha(1), alpha(2)};
      if (alpha_ell)
        alphas.insert(alphas.begin(), alpha(c.genus));
      f.tracks.push_back(run_track("f-alpha", k, alphas));
    }
  }
  return f;
}

ActionTable finish(Layout const &l, Construction c, std::vector<GeneratorAction> gens,
                   LemmaRoles roles, bool alpha_ell)
{
  ActionTable t;
  t.k = l.k;
  t.dec = l.dec;
  t.construction = c;
  t.labels = label_set(l, alpha_ell);

  // Tracks were filled with plain gamma labels; mark the excluded ones.
  std::set<CurveLabel> const known(t.labels.begin(), t.labels.end());
  for (auto &g : gens) {
    for (auto &tr : g.tracks) {
      for (auto &s : tr.slots) {
        if (s && s->kind == CurveKind::Gamma && !known.count(*s))
          s = xgamma(s->index);
        if (s && !known.count(*s))
          throw Error(Errc::InvalidParams, "table uses unknown curve " + to_string(*s));
      }
    }
    validate(g);
  }
  t.generators = std::move(gens);
  t.roles = std::move(roles);
  return t;
}

} // namespace

ActionTable build_action_four(unsigned k, GenusDecomposition const &dec)
{
  if (k < 5)
    throw Error(Errc::RangeError, "four-element construction needs k >= 5");
  Layout const l = lay_out(k, dec);
  unsigned const g = l.g;
  auto const &chains = l.chains;

  GeneratorAction f = build_f(l, false);

  GeneratorAction gg{"g", k, {}};
  gg.tracks.push_back(run_track("g-lantern", k, {lantern_x(3), gamma(1)}));
  gg.tracks.push_back(run_track("g-lantern", k, {lantern_x(1), gamma(2),
                                                 dec.plus_one ? beta(g) : alpha(2)}));
  for (std::size_t p = 1; p < chains.size(); ++p) {
    auto const &prev = chains[p - 1];
    auto const &cur = chains[p];
    gg.tracks.push_back(run_track("g-G", k, {beta(prev.betas[prev.betas.size() - 2]),
                                             gamma(*prev.excluded_after),
                                             beta(cur.betas[1])}));
  }

  GeneratorAction h{"h", k, {}};
  h.tracks.push_back(run_track("h-lantern", k, {gamma(1), lantern_x(2)}));
  std::vector<CurveLabel> tail{gamma(2), alpha(2), beta(4)};
  if (dec.plus_one)
    tail.push_back(gamma(g - 1));
  h.tracks.push_back(run_track("h-lantern", k, tail));
  for (std::size_t p = 1; p < chains.size(); ++p) {
    auto const &cur = chains[p];
    h.tracks.push_back(run_track("h-H", k, {beta(cur.betas[0]), gamma(cur.gammas[1])}));
  }

  LemmaRoles roles{{{"f", 1}}, {{"g", 1}}, {{"h", -1}}};
  return finish(l, Construction::Four, {f, gg, h}, roles, false);
}

ActionTable build_action_three(unsigned k, GenusDecomposition const &dec)
{
  validate(dec);
  if (dec.plus_one)
    throw Error(Errc::PlusOneUnsupported, "three-element construction has no ak+1 variant");
  if (k < 6)
    throw Error(Errc::UnsupportedK, "three-element construction starts at k=6");
  if (k == 7 && dec.a == 0)
    throw Error(Errc::UnsupportedK, "k=7 needs a leading genus-7 piece");

  Layout const l = lay_out(k, dec);
  auto const &chains = l.chains;
  unsigned const ell = chains.front().genus;

  GeneratorAction f = build_f(l, true);

  GeneratorAction gg{"g", k, {}};
  LemmaRoles roles;
  roles.f = {{"f", 1}};
  if (k == 6) {
    gg.tracks.push_back(make_track("g-lantern", k, {{0, lantern_x(3)}, {2, gamma(1)},
                                                    {4, lantern_x(2)}}));
    gg.tracks.push_back(make_track("g-lantern", k, {{0, lantern_x(1)}, {1, beta(4)},
                                                    {2, gamma(2)}, {4, alpha(2)}}));
    roles.g = {{"g", 2}};
    roles.h = {{"g", 4}};
  } else {
    gg.tracks.push_back(make_track("g-lantern", k, {{0, lantern_x(3)}, {1, gamma(1)},
                                                    {2, lantern_x(2)}, {5, gamma(3)}}));
    gg.tracks.push_back(make_track("g-lantern", k, {{0, lantern_x(1)}, {1, gamma(2)},
                                                    {2, alpha(2)}, {5, gamma(4)},
                                                    {6, beta(6)}}));
    roles.g = {{"g", 1}};
    roles.h = {{"f", -2}, {"g", 3}};
  }

  for (std::size_t p = 1; p < chains.size(); ++p) {
    auto const &prev = chains[p - 1];
    auto const &cur = chains[p];
    CurveLabel const lead = p == 1 ? alpha(ell) : gamma(prev.gammas.back());
    gg.tracks.push_back(run_track("g-G", k, {lead, gamma(*prev.excluded_after),
                                             gamma(cur.gammas[0]), beta(cur.betas[2])}));
  }

  return finish(l, Construction::Three, {f, gg}, roles, true);
}

std::optional<GenusDecomposition> admissible_decomposition(unsigned k, unsigned g,
                                                           Construction c)
{
  if (g < 1)
    return std::nullopt;
  if (c == Construction::Four) {
    if (k < 5)
      return std::nullopt;
    return decompose(k, g);
  }
  if (k < 6)
    return std::nullopt;
  auto d = decompose(k, g, k == 7);
  if (!d || d->plus_one)
    return std::nullopt;
  return d;
}

OrbitCertificate certify_single_orbit(std::vector<GeneratorAction> const &actions,
                                      std::vector<CurveLabel> const &labels)
{
  std::map<CurveLabel, std::size_t> index;
  for (auto const &c : labels)
    index.emplace(c, index.size());

  std::vector<std::size_t> parent(index.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };

  for (auto const &a : actions) {
    for (auto const &t : a.tracks) {
      std::optional<std::size_t> first;
      for (auto const &s : t.slots) {
        if (!s)
          continue;
        auto const it = index.find(*s);
        if (it == index.end())
          continue;
        if (!first) {
          first = root(it->second);
        } else {
          std::size_t const r = root(it->second);
          if (r != *first)
            parent[r] = *first;
        }
      }
    }
  }

  std::map<std::size_t, std::vector<CurveLabel>> groups;
  for (auto const &[c, i] : index)
    groups[root(i)].push_back(c);

  OrbitCertificate cert;
  for (auto &[r, members] : groups)
    cert.components.push_back(std::move(members));
  std::sort(cert.components.begin(), cert.components.end());

  std::optional<std::size_t> humphries_root;
  cert.single_orbit = true;
  for (auto const &[c, i] : index) {
    if (!is_humphries(c))
      continue;
    std::size_t const r = root(i);
    if (!humphries_root)
      humphries_root = r;
    else if (*humphries_root != r)
      cert.single_orbit = false;
  }
  return cert;
}

OrbitCertificate certify_single_orbit(ActionTable const &table)
{
  return certify_single_orbit(table.generators, table.labels);
}

bool verify_lantern_hypotheses(ActionTable const &table)
{
  std::set<CurveLabel> const known(table.labels.begin(), table.labels.end());
  for (CurveLabel c : {lantern_x(1), lantern_x(2), lantern_x(3), gamma(1), gamma(2), alpha(1),
                       alpha(2)}) {
    if (!known.count(c))
      throw Error(Errc::MissingLanternData, "no label for lantern curve " + to_string(c));
  }
  for (auto const *w : {&table.roles.f, &table.roles.g, &table.roles.h}) {
    if (w->empty())
      throw Error(Errc::MissingLanternData, "lemma role is unset");
    for (auto const &l : *w) {
      if (!table.find(l.gen))
        throw Error(Errc::MissingLanternData, "no action table for generator '" + l.gen + "'");
    }
  }

  auto sends = [&](GenWord const &w, CurveLabel from, CurveLabel to) {
    return table.apply(w, from) == to;
  };
  return sends(table.roles.f, gamma(1), gamma(2)) &&
         sends(table.roles.g, lantern_x(3), gamma(1)) &&
         sends(table.roles.g, lantern_x(1), gamma(2)) &&
         sends(table.roles.h, lantern_x(2), gamma(1)) &&
         sends(table.roles.h, alpha(2), gamma(2));
}

std::string to_string(EdgeFamily e)
{
  switch (e) {
    case EdgeFamily::FAlpha: return "f-alpha";
    case EdgeFamily::GBlocks: return "g-G";
    case EdgeFamily::H: return "h";
  }
  return "h";
}

ActionTable drop_edges(ActionTable table, EdgeFamily family)
{
  auto &gens = table.generators;
  switch (family) {
    case EdgeFamily::FAlpha:
      for (auto &g : gens) {
        if (g.name != "f")
          continue;
        for (auto &t : g.tracks) {
          for (auto &s : t.slots) {
            if (s && s->kind == CurveKind::Alpha)
              s.reset();
          }
        }
      }
      break;
    case EdgeFamily::GBlocks:
      for (auto &g : gens) {
        if (g.name == "g")
          std::erase_if(g.tracks, [](Track const &t) { return t.family == "g-G"; });
      }
      break;
    case EdgeFamily::H:
      if (table.construction == Construction::Four) {
        std::erase_if(gens, [](GeneratorAction const &g) { return g.name == "h"; });
      } else {
        for (auto &g : gens) {
          if (g.name == "g")
            std::erase_if(g.tracks, [](Track const &t) { return t.family == "g-lantern"; });
        }
      }
      break;
  }
  return table;
}

std::string to_json(ActionTable const &table)
{
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "torsiongen-action-table";
  j["version"] = 1;
  j["k"] = table.k;
  j["genus"] = table.genus();
  j["construction"] = to_string(table.construction);
  j["decomposition"] = {{"k", table.dec.k},
                        {"a", table.dec.a},
                        {"b", table.dec.b},
                        {"plus_one", table.dec.plus_one}};
  j["roles"] = {{"f", to_string(table.roles.f)},
                {"g", to_string(table.roles.g)},
                {"h", to_string(table.roles.h)}};

  ordered_json labels = ordered_json::array();
  for (auto const &c : table.labels)
    labels.push_back(to_string(c));
  j["labels"] = std::move(labels);

  ordered_json gens = ordered_json::array();
  for (auto const &g : table.generators) {
    ordered_json gj;
    gj["name"] = g.name;
    gj["order"] = g.order;
    ordered_json map = ordered_json::array();
    for (auto const &[x, y] : g.map())
      map.push_back({to_string(x), to_string(y)});
    gj["map"] = std::move(map);
    ordered_json tracks = ordered_json::array();
    for (auto const &t : g.tracks) {
      ordered_json slots = ordered_json::array();
      for (auto const &s : t.slots)
        slots.push_back(s ? ordered_json(to_string(*s)) : ordered_json(nullptr));
      tracks.push_back({{"family", t.family}, {"slots", std::move(slots)}});
    }
    gj["tracks"] = std::move(tracks);
    gens.push_back(std::move(gj));
  }
  j["generators"] = std::move(gens);
  return j.dump(1);
}

ActionTable table_from_json(std::string const &text)
{
  try {
    auto const j = nlohmann::json::parse(text);
    ActionTable t;
    t.k = j.at("k").get<unsigned>();
    auto const &d = j.at("decomposition");
    t.dec = {d.at("k").get<unsigned>(), d.at("a").get<unsigned>(), d.at("b").get<unsigned>(),
             d.at("plus_one").get<bool>()};
    validate(t.dec);
    if (j.at("genus").get<unsigned>() != t.dec.genus())
      throw Error(Errc::ParseError, "genus does not match the decomposition");
    t.construction = construction_from_string(j.at("construction").get<std::string>());
    auto const &r = j.at("roles");
    t.roles = {parse_gen_word(r.at("f").get<std::string>()),
               parse_gen_word(r.at("g").get<std::string>()),
               parse_gen_word(r.at("h").get<std::string>())};
    for (auto const &l : j.at("labels"))
      t.labels.push_back(parse_label(l.get<std::string>()));

    for (auto const &gj : j.at("generators")) {
      GeneratorAction g;
      g.name = gj.at("name").get<std::string>();
      g.order = gj.at("order").get<unsigned>();
      for (auto const &tj : gj.at("tracks")) {
        Track tr;
        tr.family = tj.at("family").get<std::string>();
        for (auto const &s : tj.at("slots"))
          tr.slots.push_back(s.is_null() ? Slot{} : Slot{parse_label(s.get<std::string>())});
        g.tracks.push_back(std::move(tr));
      }
      validate(g);

      std::vector<std::pair<CurveLabel, CurveLabel>> listed;
      for (auto const &pair : gj.at("map"))
        listed.emplace_back(parse_label(pair.at(0).get<std::string>()),
                            parse_label(pair.at(1).get<std::string>()));
      std::sort(listed.begin(), listed.end());
      if (listed != g.map())
        throw Error(Errc::ParseError, "map of '" + g.name + "' disagrees with its tracks");
      t.generators.push_back(std::move(g));
    }
    return t;
  } catch (nlohmann::json::exception const &e) {
    throw Error(Errc::ParseError, e.what());
  }
}

} // namespace torsiongen
