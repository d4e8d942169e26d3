#include "torsiongen/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <json.hpp>

#include "torsiongen/error.hpp"
#include "torsiongen/group.hpp"
#include "torsiongen/lantern.hpp"
#include "torsiongen/rng.hpp"
#include "torsiongen/symplectic.hpp"

namespace torsiongen
{

using nlohmann::ordered_json;

namespace
{

constexpr std::uint64_t uniform_sampler_attempts = 10'000'000;

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn)
{
  if (jobs == 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t const i = next.fetch_add(1);
        if (i >= count)
          return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

GroupKind target_kind(Family family, unsigned k)
{
  if (family == Family::Prop62)
    return GroupKind::Alternating;
  return k % 2 == 0 ? GroupKind::Symmetric : GroupKind::Alternating;
}

Outcome outcome_from_string(std::string const &s)
{
  for (Outcome o : {Outcome::Pass, Outcome::Fail, Outcome::ExpectedFail, Outcome::UnexpectedPass,
                    Outcome::Skip}) {
    if (to_string(o) == s)
      return o;
  }
  throw Error(Errc::ParseError, "unknown outcome '" + s + "'");
}

ordered_json cell_json(CellResult const &c, bool timings)
{
  ordered_json j;
  j["family"] = to_string(c.family);
  j["k"] = c.k;
  j["n"] = c.n;
  j["outcome"] = to_string(c.outcome);
  j["classification"] = c.classification;
  j["expected"] = c.expected;
  j["orders"] = c.orders;
  j["case_tag"] = c.case_tag;
  if (c.witness_word.empty())
    j["witness"] = nullptr;
  else
    j["witness"] = {{"word", c.witness_word}, {"cycle", c.witness_cycle}};
  j["note"] = c.note;
  if (timings)
    j["elapsed_ms"] = c.elapsed_ms;
  return j;
}

CellResult cell_from_json(nlohmann::json const &j)
{
  CellResult c;
  c.family = family_from_string(j.at("family").get<std::string>());
  c.k = j.at("k").get<unsigned>();
  c.n = j.at("n").get<unsigned>();
  c.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  c.classification = j.at("classification").get<std::string>();
  c.expected = j.at("expected").get<std::string>();
  c.orders = j.at("orders").get<std::vector<unsigned long long>>();
  c.case_tag = j.at("case_tag").get<std::string>();
  if (!j.at("witness").is_null()) {
    c.witness_word = j["witness"].at("word").get<std::string>();
    c.witness_cycle = j["witness"].at("cycle").get<std::string>();
  }
  c.note = j.at("note").get<std::string>();
  return c;
}

std::string cell_key(Family family, unsigned k, unsigned n)
{
  return std::string("torsiongen|") + tool_version + "|cell|" + to_string(family) + "|" +
         std::to_string(k) + "|" + std::to_string(n);
}

CellResult skipped(Family family, unsigned k, unsigned n, Error const &e)
{
  CellResult c;
  c.family = family;
  c.k = k;
  c.n = n;
  c.outcome = Outcome::Skip;
  c.expected = to_string(target_kind(family, k));
  c.note = e.what();
  return c;
}

// Runs one cell through the cache. Domain errors propagate when `strict`,
// otherwise they become skipped cells (and are cached as such).
CellResult cached_cell(Family family, unsigned k, unsigned n, ResultCache const *cache,
                       bool strict)
{
  auto compute = [&]() -> CellResult {
    try {
      return run_cell(family, k, n);
    } catch (Error const &e) {
      if (strict)
        throw;
      return skipped(family, k, n, e);
    }
  };

  if (!cache)
    return compute();

  std::string const key = cell_key(family, k, n);
  if (auto hit = cache->lookup(key)) {
    CellResult cached;
    try {
      cached = cell_from_json(nlohmann::json::parse(*hit));
    } catch (std::exception const &) {
      auto fresh = compute();
      cache->store(key, cell_json(fresh, false).dump());
      return fresh;
    }
    if (strict && cached.outcome == Outcome::Skip)
      return compute(); // re-raise the domain error

    // Spot-check about 1% of hits, chosen by key hash so reruns agree.
    if (fnv1a(key + "|spot") % 100 == 0) {
      auto fresh = compute();
      fresh.elapsed_ms = 0;
      if (!(fresh == cached)) {
        std::cerr << "warning: stale cache entry for " << key << ", replaced\n";
        cache->store(key, cell_json(fresh, false).dump());
        return fresh;
      }
    }
    return cached;
  }

  auto fresh = compute();
  cache->store(key, cell_json(fresh, false).dump());
  return fresh;
}

} // namespace

std::string to_string(Outcome o)
{
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::ExpectedFail: return "expected_fail";
    case Outcome::UnexpectedPass: return "unexpected_pass";
    case Outcome::Skip: return "skip";
  }
  return "skip";
}

Summary SweepReport::summary() const
{
  Summary s;
  s.total = cells.size();
  for (auto const &c : cells) {
    switch (c.outcome) {
      case Outcome::Pass: ++s.pass; break;
      case Outcome::Fail: ++s.fail; break;
      case Outcome::ExpectedFail: ++s.expected_fail; break;
      case Outcome::UnexpectedPass: ++s.unexpected_pass; break;
      case Outcome::Skip: ++s.skip; break;
    }
  }
  return s;
}

std::optional<std::filesystem::path> resolve_cache_dir(std::optional<std::string> const &flag)
{
  if (flag && !flag->empty())
    return std::filesystem::path(*flag);
  if (char const *env = std::getenv("TORSIONGEN_CACHE"); env && *env)
    return std::filesystem::path(env);
  return std::nullopt;
}

bool in_domain(Family family, unsigned k, unsigned n)
{
  switch (family) {
    case Family::Prop61: return k >= 3 && n >= 2 * k;
    case Family::Prop62: return k >= 4 && k % 2 == 0 && n >= k + 2;
    case Family::MillerSmall: return k >= 3 && n >= k && n <= 2 * k - 1;
    case Family::Conjecture: return k >= 3 && n >= k;
  }
  return false;
}

CellResult run_cell(Family family, unsigned k, unsigned n)
{
  auto const t0 = std::chrono::steady_clock::now();
  GeneratorSet const set = build_family(family, k, n);

  CellResult c;
  c.family = family;
  c.k = k;
  c.n = n;
  c.case_tag = set.which.case_tag;

  bool orders_ok = true;
  for (auto const &g : set.gens) {
    c.orders.push_back(order_of(g));
    orders_ok = orders_ok && c.orders.back() == k;
  }

  GroupKind const target = target_kind(family, k);
  c.expected = to_string(target);
  c.classification = to_string(classify(set.gens).kind);

  if (n >= 6) {
    if (auto w = jordan_certificate(set.gens, 4, set.names)) {
      c.witness_word = w->word;
      c.witness_cycle = to_cycle_string(w->element);
    }
  }

  bool const hit = orders_ok && c.classification == c.expected;
  bool const exception = family == Family::Conjecture && is_known_conjecture_exception(k, n);
  if (exception)
    c.outcome = hit ? Outcome::UnexpectedPass : Outcome::ExpectedFail;
  else
    c.outcome = hit ? Outcome::Pass : Outcome::Fail;

  if (!orders_ok)
    c.note = "a generator does not have order k";
  else if (exception)
    c.note = "known exception";

  c.elapsed_ms =
    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

SweepReport cmd_verify(Family family, unsigned k, unsigned n, RunOptions const &opt)
{
  if (!in_domain(family, k, n))
    throw Error(Errc::RangeError, "(k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                                    ") is outside the " + to_string(family) + " domain");

  std::optional<ResultCache> cache;
  if (opt.cache_dir)
    cache.emplace(*opt.cache_dir);

  SweepReport r;
  r.command = "verify";
  r.params = {{"family", to_string(family)}, {"k", k}, {"n", n}};
  r.cells.push_back(cached_cell(family, k, n, cache ? &*cache : nullptr, true));
  return r;
}

SweepReport cmd_sweep(Family family, unsigned k_min, unsigned k_max, unsigned n_min,
                      unsigned n_max, RunOptions const &opt)
{
  SweepReport r;
  r.command = "sweep";
  r.params = {{"family", to_string(family)}, {"k_min", k_min}, {"k_max", k_max},
              {"n_min", n_min},              {"n_max", n_max}};

  std::vector<std::pair<unsigned, unsigned>> grid;
  for (unsigned k = k_min; k <= k_max; ++k) {
    for (unsigned n = n_min; n <= n_max; ++n) {
      if (in_domain(family, k, n))
        grid.emplace_back(k, n);
    }
  }

  std::optional<ResultCache> cache;
  if (opt.cache_dir)
    cache.emplace(*opt.cache_dir);

  r.cells.resize(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    auto const [k, n] = grid[i];
    r.cells[i] = cached_cell(family, k, n, cache ? &*cache : nullptr, false);
  });
  return r;
}

int exit_code(SweepReport const &r)
{
  for (auto const &c : r.cells) {
    if (c.outcome == Outcome::Fail || c.outcome == Outcome::UnexpectedPass)
      return 1;
  }
  return 0;
}

std::string to_string(Sampler s)
{
  return s == Sampler::MaxDisjointKCycles ? "max_disjoint_k_cycles" : "uniform_order_k";
}

Sampler sampler_from_string(std::string const &s)
{
  if (s == "max_disjoint_k_cycles" || s == "max_disjoint")
    return Sampler::MaxDisjointKCycles;
  if (s == "uniform_order_k" || s == "uniform")
    return Sampler::UniformOrderK;
  throw Error(Errc::InvalidSampler, "unknown sampler '" + s + "'");
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials)
{
  if (trials == 0)
    throw Error(Errc::TrialsZero, "interval needs at least one trial");
  double const z = 1.959963984540054;
  double const n = static_cast<double>(trials);
  double const p = static_cast<double>(successes) / n;
  double const denom = 1 + z * z / n;
  double const centre = (p + z * z / (2 * n)) / denom;
  double const half = z / denom * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Permutation sample_order_k(unsigned k, unsigned n, Sampler s, std::mt19937_64 &rng)
{
  if (k < 2 || n < k)
    throw Error(Errc::RangeError, "sampling needs 2 <= k <= n");

  std::vector<Point> pts(n);
  if (s == Sampler::MaxDisjointKCycles) {
    std::iota(pts.begin(), pts.end(), Point{0});
    portable_shuffle(pts.begin(), pts.end(), rng);
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    for (unsigned c = 0; c < n / k; ++c) {
      for (unsigned i = 0; i < k; ++i)
        images[pts[c * k + i]] = pts[c * k + (i + 1) % k];
    }
    return Permutation(std::move(images));
  }

  for (std::uint64_t attempt = 0; attempt < uniform_sampler_attempts; ++attempt) {
    std::iota(pts.begin(), pts.end(), Point{0});
    portable_shuffle(pts.begin(), pts.end(), rng);
    Permutation p(pts);
    if (order_of(p) == k)
      return p;
  }
  throw Error(Errc::SearchExhausted, "no element of order " + std::to_string(k) + " in " +
                                       std::to_string(uniform_sampler_attempts) +
                                       " uniform draws");
}

EstimatorResult cmd_estimate(unsigned k, unsigned n, std::uint64_t trials, Sampler sampler,
                             std::uint64_t seed, RunOptions const &opt)
{
  if (trials == 0)
    throw Error(Errc::TrialsZero, "trials must be at least 1");
  if (k < 2 || n < k)
    throw Error(Errc::RangeError, "estimate needs 2 <= k <= n");

  std::string const key = std::string("torsiongen|") + tool_version + "|estimate|" +
                          std::to_string(k) + "|" + std::to_string(n) + "|" +
                          to_string(sampler) + "|" + std::to_string(trials) + "|" +
                          std::to_string(seed);
  std::optional<ResultCache> cache;
  if (opt.cache_dir) {
    cache.emplace(*opt.cache_dir);
    if (auto hit = cache->lookup(key)) {
      try {
        auto const j = nlohmann::json::parse(*hit);
        EstimatorResult r{k, n, sampler, trials, j.at("successes").get<std::uint64_t>(),
                          0, 0, 0, seed};
        r.estimate = static_cast<double>(r.successes) / static_cast<double>(trials);
        std::tie(r.ci_low, r.ci_high) = wilson_interval(r.successes, trials);
        return r;
      } catch (nlohmann::json::exception const &) {
      }
    }
  }

  GroupKind const target = k % 2 == 0 ? GroupKind::Symmetric : GroupKind::Alternating;
  std::atomic<std::uint64_t> successes{0};
  // Each trial draws from its own stream, so the result does not depend on
  // how trials are spread over workers.
  parallel_for(trials, opt.jobs, [&](std::size_t t) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t)));
    Permutation const a = sample_order_k(k, n, sampler, rng);
    Permutation const b = sample_order_k(k, n, sampler, rng);
    if (classify({a, b}).kind == target)
      successes.fetch_add(1, std::memory_order_relaxed);
  });

  EstimatorResult r{k, n, sampler, trials, successes.load(), 0, 0, 0, seed};
  r.estimate = static_cast<double>(r.successes) / static_cast<double>(trials);
  std::tie(r.ci_low, r.ci_high) = wilson_interval(r.successes, trials);

  if (cache)
    cache->store(key, ordered_json{{"successes", r.successes}}.dump());
  return r;
}

bool McgReport::passed() const
{
  return !stages.empty() &&
         std::all_of(stages.begin(), stages.end(), [](McgStage const &s) { return s.passed; });
}

McgReport cmd_mcg(unsigned k, unsigned g, Construction variant)
{
  auto const dec = admissible_decomposition(k, g, variant);
  if (!dec)
    throw Error(Errc::RangeError, "(k=" + std::to_string(k) + ", g=" + std::to_string(g) +
                                    ") is not admissible for the " + to_string(variant) +
                                    "-element construction");

  McgReport r;
  r.k = k;
  r.g = g;
  r.variant = variant;
  r.dec = *dec;
  r.stages.push_back({"decompose", true, to_string(*dec)});

  ActionTable table;
  try {
    table = variant == Construction::Four ? build_action_four(k, *dec)
                                          : build_action_three(k, *dec);
    r.stages.push_back({"build_actions", true,
                        std::to_string(table.labels.size()) + " labels, " +
                          std::to_string(table.generators.size()) + " generators"});
  } catch (Error const &e) {
    r.stages.push_back({"build_actions", false, e.what()});
    return r;
  }

  try {
    bool const ok = verify_lantern_hypotheses(table);
    r.stages.push_back({"lantern_hypotheses", ok,
                        "f=" + to_string(table.roles.f) + " G=" + to_string(table.roles.g) +
                          " H=" + to_string(table.roles.h)});
  } catch (Error const &e) {
    r.stages.push_back({"lantern_hypotheses", false, e.what()});
  }

  auto const cert = certify_single_orbit(table);
  r.stages.push_back({"single_orbit", cert.single_orbit,
                      std::to_string(cert.components.size()) + " component(s)"});

  try {
    auto const proof = verify_lantern_word(table);
    r.word = to_string(proof.result);
    r.stages.push_back(
      {"lantern_word", true, std::to_string(proof.steps.size()) + " rewriting steps"});
  } catch (Error const &e) {
    r.stages.push_back({"lantern_word", false, e.what()});
  }

  {
    bool minimal = true;
    std::string detail;
    for (auto [name, rules] : {std::pair{"lantern", RuleSet{false, true, true}},
                               std::pair{"commute", RuleSet{true, false, true}},
                               std::pair{"conjugate", RuleSet{true, true, false}}}) {
      try {
        verify_lantern_word(table, rules);
        minimal = false;
        detail += std::string(detail.empty() ? "" : "; ") + "replay passes without " + name;
      } catch (Error const &e) {
        if (e.code() != Errc::RewriteStepInvalid) {
          minimal = false;
          detail += std::string(detail.empty() ? "" : "; ") + e.what();
        }
      }
    }
    r.stages.push_back({"rule_minimality", minimal,
                        minimal ? "each rule is needed" : detail});
  }

  {
    bool ok = true;
    std::string detail;
    for (EdgeFamily fam : {EdgeFamily::FAlpha, EdgeFamily::GBlocks, EdgeFamily::H}) {
      if (fam == EdgeFamily::GBlocks && dec->pieces() < 2)
        continue; // no G_i sets to remove
      bool const broken = !certify_single_orbit(drop_edges(table, fam)).single_orbit;
      ok = ok && broken;
      if (!detail.empty())
        detail += ", ";
      detail += "-" + to_string(fam) + (broken ? " splits" : " STILL CONNECTED");
    }
    r.stages.push_back({"edge_controls", ok, detail});
  }

  try {
    auto const rot = rotation_matrix(*dec);
    unsigned const ord = rot.order(2 * k);
    r.stages.push_back({"rotation_order", ord == k,
                        "order " + std::to_string(ord) + " on rank " +
                          std::to_string(rot.entries().rows())});
  } catch (Error const &e) {
    r.stages.push_back({"rotation_order", false, e.what()});
  }
  return r;
}

namespace
{

ordered_json header(std::string const &command)
{
  ordered_json j;
  j["schema"] = "torsiongen-report";
  j["schema_version"] = report_schema_version;
  j["tool_version"] = tool_version;
  j["command"] = command;
  return j;
}

std::string csv_field(std::string const &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"')
      q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string fixed(double x)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

} // namespace

std::string to_json(SweepReport const &r, bool timings)
{
  ordered_json j = header(r.command);
  ordered_json params = ordered_json::object();
  for (auto const &[name, v] : r.params) {
    if (auto const *i = std::get_if<long long>(&v))
      params[name] = *i;
    else
      params[name] = std::get<std::string>(v);
  }
  j["params"] = std::move(params);
  j["seed"] = nullptr;

  ordered_json cells = ordered_json::array();
  for (auto const &c : r.cells)
    cells.push_back(cell_json(c, timings));
  j["cells"] = std::move(cells);

  auto const s = r.summary();
  j["summary"] = {{"total", s.total},
                  {"pass", s.pass},
                  {"fail", s.fail},
                  {"expected_fail", s.expected_fail},
                  {"unexpected_pass", s.unexpected_pass},
                  {"skip", s.skip}};
  return j.dump(2) + "\n";
}

std::string to_csv(SweepReport const &r, bool timings)
{
  std::string out =
    "family,k,n,outcome,classification,expected,orders,case_tag,witness_word,witness_cycle,note";
  if (timings)
    out += ",elapsed_ms";
  out += "\n";
  for (auto const &c : r.cells) {
    std::string orders;
    for (auto o : c.orders)
      orders += (orders.empty() ? "" : ";") + std::to_string(o);
    out += to_string(c.family) + "," + std::to_string(c.k) + "," + std::to_string(c.n) + "," +
           to_string(c.outcome) + "," + c.classification + "," + c.expected + "," + orders +
           "," + csv_field(c.case_tag) + "," + csv_field(c.witness_word) + "," +
           csv_field(c.witness_cycle) + "," + csv_field(c.note);
    if (timings)
      out += "," + fixed(c.elapsed_ms);
    out += "\n";
  }
  return out;
}

std::string to_json(EstimatorResult const &r)
{
  ordered_json j = header("estimate");
  j["params"] = {{"k", r.k}, {"n", r.n}, {"sampler", to_string(r.sampler)}, {"trials", r.trials}};
  j["seed"] = r.seed;
  j["result"] = {{"successes", r.successes},
                 {"estimate", r.estimate},
                 {"ci95", {r.ci_low, r.ci_high}}};
  return j.dump(2) + "\n";
}

std::string to_csv(EstimatorResult const &r)
{
  return "k,n,sampler,trials,successes,estimate,ci_low,ci_high,seed\n" + std::to_string(r.k) +
         "," + std::to_string(r.n) + "," + to_string(r.sampler) + "," +
         std::to_string(r.trials) + "," + std::to_string(r.successes) + "," +
         fixed(r.estimate) + "," + fixed(r.ci_low) + "," + fixed(r.ci_high) + "," +
         std::to_string(r.seed) + "\n";
}

std::string to_json(McgReport const &r)
{
  ordered_json j = header("mcg");
  j["params"] = {{"k", r.k}, {"g", r.g}, {"variant", to_string(r.variant)}};
  j["seed"] = nullptr;
  j["decomposition"] = {
    {"k", r.dec.k}, {"a", r.dec.a}, {"b", r.dec.b}, {"plus_one", r.dec.plus_one}};
  ordered_json stages = ordered_json::array();
  for (auto const &s : r.stages)
    stages.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
  j["stages"] = std::move(stages);
  j["word"] = r.word;
  j["passed"] = r.passed();
  return j.dump(2) + "\n";
}

std::string to_csv(McgReport const &r)
{
  std::string out = "k,g,variant,stage,passed,detail\n";
  for (auto const &s : r.stages)
    out += std::to_string(r.k) + "," + std::to_string(r.g) + "," + to_string(r.variant) + "," +
           s.name + "," + (s.passed ? "true" : "false") + "," + csv_field(s.detail) + "\n";
  return out;
}

std::uint64_t fnv1a(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ResultCache::ResultCache(std::filesystem::path dir) : _dir(std::move(dir))
{
  std::filesystem::create_directories(_dir);
}

std::filesystem::path ResultCache::path_for(std::string const &key) const
{
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".json";
  return _dir / os.str();
}

std::optional<std::string> ResultCache::lookup(std::string const &key) const
{
  std::ifstream in(path_for(key));
  if (!in)
    return std::nullopt;
  try {
    auto const j = nlohmann::json::parse(in);
    if (j.at("key").get<std::string>() != key)
      return std::nullopt;
    return j.at("value").get<std::string>();
  } catch (nlohmann::json::exception const &) {
    return std::nullopt;
  }
}

void ResultCache::store(std::string const &key, std::string const &value) const
{
  static std::atomic<std::uint64_t> counter{0};
  auto const final_path = path_for(key);
  auto tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
         std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << ordered_json{{"key", key}, {"value", value}}.dump() << "\n";
    if (!out)
      throw Error(Errc::InvalidParams, "cannot write cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::InvalidParams, "cannot publish cache file " + final_path.string());
  }
}

} // namespace torsiongen
