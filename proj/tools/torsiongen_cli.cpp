// torsiongen: verification sweeps, Monte Carlo estimates and the
// mapping-class pipeline from the command line.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "torsiongen/error.hpp"
#include "torsiongen/genus.hpp"
#include "torsiongen/sweep.hpp"
#include "torsiongen/symplectic.hpp"

using namespace torsiongen;
using nlohmann::ordered_json;

namespace
{

constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct Flags
{
  std::string family;
  std::optional<unsigned> k, n, g, k_max, n_max, g_max, p;
  std::uint64_t trials = 1000;
  std::string sampler = "max_disjoint_k_cycles";
  std::uint64_t seed = 1;
  unsigned jobs = 0;
  std::string format = "json";
  std::optional<std::string> cache_dir;
  bool timings = false;
  std::string variant = "four";
  std::string mode = "rotation";
  bool dump_actions = false;
};

unsigned need(std::optional<unsigned> const &v, char const *flag)
{
  if (!v)
    throw CLI::ValidationError(std::string(flag), "is required for this subcommand");
  return *v;
}

RunOptions options(Flags const &f)
{
  RunOptions o;
  o.jobs = f.jobs;
  o.cache_dir = resolve_cache_dir(f.cache_dir);
  o.timings = f.timings;
  return o;
}

void emit(std::string const &json, std::string const &csv, Flags const &f)
{
  std::cout << (f.format == "csv" ? csv : json);
}

int run_verify(Flags const &f)
{
  auto const r = cmd_verify(family_from_string(f.family), need(f.k, "--k"), need(f.n, "--n"),
                            options(f));
  emit(to_json(r, f.timings), to_csv(r, f.timings), f);
  return exit_code(r);
}

int run_sweep(Flags const &f)
{
  unsigned const k_min = f.k.value_or(3);
  unsigned const n_min = f.n.value_or(1);
  auto const r = cmd_sweep(family_from_string(f.family), k_min, f.k_max.value_or(k_min), n_min,
                           need(f.n_max, "--n-max"), options(f));
  emit(to_json(r, f.timings), to_csv(r, f.timings), f);
  return exit_code(r);
}

int run_estimate(Flags const &f)
{
  auto const r = cmd_estimate(need(f.k, "--k"), need(f.n, "--n"), f.trials,
                              sampler_from_string(f.sampler), f.seed, options(f));
  emit(to_json(r), to_csv(r), f);
  return 0;
}

// A single (k, g) prints the full stage report; with --k-max or --g-max every
// admissible pair of the box is run and summarised one line per pair.
int run_mcg(Flags const &f)
{
  Construction const variant = construction_from_string(f.variant);
  unsigned const k = need(f.k, "--k");
  if (f.dump_actions) {
    unsigned const g = need(f.g, "--g");
    auto const dec = admissible_decomposition(k, g, variant);
    if (!dec)
      throw Error(Errc::RangeError, "(k, g) is not admissible for this variant");
    std::cout << to_json(variant == Construction::Four ? build_action_four(k, *dec)
                                                       : build_action_three(k, *dec));
    return 0;
  }
  if (!f.k_max && !f.g_max) {
    auto const r = cmd_mcg(k, need(f.g, "--g"), variant);
    emit(to_json(r), to_csv(r), f);
    return r.passed() ? 0 : exit_failure;
  }

  unsigned const k_max = f.k_max.value_or(k);
  unsigned const g_min = f.g.value_or(1);
  unsigned const g_max = need(f.g_max, "--g-max");
  ordered_json cells = ordered_json::array();
  std::string csv = "k,g,variant,passed,failed_stages\n";
  std::size_t failures = 0;
  for (unsigned kk = k; kk <= k_max; ++kk) {
    for (unsigned g = g_min; g <= g_max; ++g) {
      if (!admissible_decomposition(kk, g, variant))
        continue;
      auto const r = cmd_mcg(kk, g, variant);
      std::string failed;
      for (auto const &s : r.stages) {
        if (!s.passed)
          failed += (failed.empty() ? "" : ";") + s.name;
      }
      failures += r.passed() ? 0 : 1;
      cells.push_back({{"k", kk}, {"g", g}, {"passed", r.passed()}, {"failed_stages", failed}});
      csv += std::to_string(kk) + "," + std::to_string(g) + "," + to_string(variant) + "," +
             (r.passed() ? "true" : "false") + "," + failed + "\n";
    }
  }
  ordered_json j;
  j["schema"] = "torsiongen-report";
  j["schema_version"] = report_schema_version;
  j["tool_version"] = tool_version;
  j["command"] = "mcg";
  j["params"] = {{"k_min", k},        {"k_max", k_max}, {"g_min", g_min},
                 {"g_max", g_max},    {"variant", to_string(variant)}};
  j["seed"] = nullptr;
  j["cells"] = cells;
  j["summary"] = {{"total", cells.size()}, {"failed", failures}};
  emit(j.dump(2) + "\n", csv, f);
  return failures == 0 ? 0 : exit_failure;
}

ordered_json decomposition_json(GenusDecomposition const &d)
{
  return {{"k", d.k}, {"a", d.a}, {"b", d.b}, {"plus_one", d.plus_one}, {"genus", d.genus()}};
}

int run_genus(Flags const &f)
{
  unsigned const k = need(f.k, "--k");
  ordered_json j;
  j["command"] = "genus";
  j["k"] = k;
  if (f.g) {
    auto const d = decompose(k, *f.g);
    j["g"] = *f.g;
    j["decomposition"] = d ? decomposition_json(*d) : ordered_json(nullptr);
    auto const lead = decompose(k, *f.g, true);
    j["leading_k"] = lead ? decomposition_json(*lead) : ordered_json(nullptr);
  } else {
    if (k < 5)
      throw Error(Errc::RangeError, "genus summary needs k >= 5");
    auto const c = count_small_representable(k);
    j["stable_bound"] = stable_bound(k);
    j["small_representable"] = {{"count", c.count}, {"total", c.total}};
    if (k >= 6)
      j["theorem1_bound"] = theorem1_bound(k);
  }
  if (f.format == "csv") {
    std::cout << "key,value\n";
    for (auto const &[key, v] : j.items())
      std::cout << key << "," << v.dump() << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

// rotation: homology action of the rotation for decompose(k, g).
// modp: closure of the Humphries transvections of genus g mod p.
int run_sympl(Flags const &f)
{
  ordered_json j;
  j["command"] = "sympl";
  j["mode"] = f.mode;
  int code = 0;
  if (f.mode == "rotation") {
    unsigned const k = need(f.k, "--k");
    unsigned const g = need(f.g, "--g");
    auto const d = decompose(k, g);
    if (!d)
      throw Error(Errc::RangeError, "genus " + std::to_string(g) + " is not representable for k=" +
                                      std::to_string(k));
    auto const m = rotation_matrix(*d);
    unsigned const ord = m.order(2 * k);
    j["decomposition"] = decomposition_json(*d);
    j["order"] = ord;
    j["preserves_form"] = preserves_form(m.entries());
    j["matrix"] = m.entries().to_rows();
    code = ord == k ? 0 : exit_failure;
  } else if (f.mode == "modp") {
    unsigned const g = need(f.g, "--g");
    unsigned const p = need(f.p, "--p");
    auto const r = generates_mod_p(standard_transvections(g), p);
    j["g"] = g;
    j["p"] = p;
    j["closure_order"] = r.order;
    j["sp_order"] = sp_order(g, p).str();
    j["generates"] = r.generates;
    code = r.generates ? 0 : exit_failure;
  } else {
    throw Error(Errc::InvalidParams, "unknown sympl mode '" + f.mode + "'");
  }
  if (f.format == "csv" && f.mode == "rotation") {
    std::cout << to_text(rotation_matrix(*decompose(*f.k, *f.g)).entries());
  } else if (f.format == "csv") {
    std::cout << "g,p,closure_order,sp_order,generates\n"
              << j["g"] << "," << j["p"] << "," << j["closure_order"] << ","
              << j["sp_order"].get<std::string>() << "," << j["generates"] << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return code;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Order-k generation of symmetric, alternating and mapping class groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version));

  Flags f;
  auto common = [&](CLI::App *sub) {
    sub->add_option("--format", f.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", f.jobs, "Worker threads, 0 for all cores");
    sub->add_option("--cache-dir", f.cache_dir,
                    "Result cache directory (default: $TORSIONGEN_CACHE, else none)");
    sub->add_flag("--timings", f.timings, "Include per-cell elapsed times");
  };

  auto *verify = app.add_subcommand("verify", "Check one (family, k, n) cell");
  verify->add_option("family", f.family, "prop61 | prop62 | miller | conjecture")->required();
  verify->add_option("k,--k", f.k);
  verify->add_option("n,--n", f.n);
  common(verify);

  auto *sweep = app.add_subcommand("sweep", "Check every in-domain cell of a (k, n) box");
  sweep->add_option("family", f.family)->required();
  sweep->add_option("--k", f.k, "Smallest k (default 3)");
  sweep->add_option("--k-max", f.k_max, "Largest k (default --k)");
  sweep->add_option("--n", f.n, "Smallest n (default 1)");
  sweep->add_option("--n-max", f.n_max, "Largest n")->required();
  common(sweep);

  auto *estimate = app.add_subcommand("estimate", "Monte Carlo generation probability");
  estimate->add_option("--k", f.k)->required();
  estimate->add_option("--n", f.n)->required();
  estimate->add_option("--trials", f.trials);
  estimate->add_option("--sampler", f.sampler, "max_disjoint_k_cycles | uniform_order_k");
  estimate->add_option("--seed", f.seed);
  common(estimate);

  auto *mcg = app.add_subcommand("mcg", "Mapping-class pipeline for (k, g)");
  mcg->add_option("k,--k", f.k);
  mcg->add_option("g,--g", f.g, "Genus, or the smallest genus with --g-max");
  mcg->add_option("variant,--variant", f.variant, "four | three");
  mcg->add_option("--k-max", f.k_max);
  mcg->add_option("--g-max", f.g_max);
  mcg->add_flag("--dump-actions", f.dump_actions, "Print the action table instead of running");
  common(mcg);

  auto *genus = app.add_subcommand("genus", "Genus decompositions and counts");
  genus->add_option("--k", f.k)->required();
  genus->add_option("--g", f.g);
  common(genus);

  auto *sympl = app.add_subcommand("sympl", "Homology actions");
  sympl->add_option("mode", f.mode, "rotation | modp")
    ->check(CLI::IsMember({"rotation", "modp"}));
  sympl->add_option("--k", f.k);
  sympl->add_option("--g", f.g);
  sympl->add_option("--p", f.p);
  common(sympl);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int const rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  try {
    if (*verify)
      return run_verify(f);
    if (*sweep)
      return run_sweep(f);
    if (*estimate)
      return run_estimate(f);
    if (*mcg)
      return run_mcg(f);
    if (*genus)
      return run_genus(f);
    return run_sympl(f);
  } catch (CLI::Error const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (Error const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (std::exception const &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_failure;
  }
}
