#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <numeric>
#include <set>
#include <thread>

#include <unistd.h>

#include "torsiongen/error.hpp"
#include "torsiongen/group.hpp"
#include "torsiongen/sweep.hpp"

using namespace torsiongen;
namespace fs = std::filesystem;

namespace
{

struct TempDir
{
  fs::path path;
  explicit TempDir(std::string const &tag)
  {
    path = fs::temp_directory_path() /
           ("torsiongen-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

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

// Exact success rate of the max-disjoint sampler by enumerating its support.
double exact_rate(unsigned k, unsigned n)
{
  std::set<Permutation> support;
  std::vector<Point> pts(n);
  std::iota(pts.begin(), pts.end(), Point{0});
  do {
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    for (unsigned c = 0; c < n / k; ++c) {
      for (unsigned i = 0; i < k; ++i)
        img[pts[c * k + i]] = pts[c * k + (i + 1) % k];
    }
    support.insert(Permutation(img));
  } while (std::next_permutation(pts.begin(), pts.end()));

  GroupKind const target = k % 2 == 0 ? GroupKind::Symmetric : GroupKind::Alternating;
  std::size_t hits = 0;
  for (auto const &a : support) {
    for (auto const &b : support)
      hits += classify({a, b}).kind == target;
  }
  return static_cast<double>(hits) / static_cast<double>(support.size() * support.size());
}

} // namespace

TEST_CASE("single cells")
{
  auto const r = cmd_verify(Family::Prop61, 5, 18);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.cells[0].outcome == Outcome::Pass);
  CHECK(r.cells[0].classification == "Alternating");
  CHECK(r.cells[0].orders == std::vector<unsigned long long>{5, 5, 5});
  CHECK(r.cells[0].witness_cycle == "(0 1 3)");
  CHECK(exit_code(r) == 0);

  auto const x = cmd_verify(Family::Conjecture, 3, 6);
  CHECK(x.cells[0].outcome == Outcome::ExpectedFail);
  CHECK(x.cells[0].note == "known exception");
  CHECK(exit_code(x) == 0);

  CHECK(code_of([] { cmd_verify(Family::Prop61, 5, 9); }) == Errc::RangeError);
  CHECK(code_of([] { cmd_verify(Family::Conjecture, 4, 11); }) == Errc::CaseUndefined);
}

TEST_CASE("domains")
{
  CHECK(in_domain(Family::Prop61, 3, 6));
  CHECK_FALSE(in_domain(Family::Prop61, 3, 5));
  CHECK(in_domain(Family::Prop62, 4, 6));
  CHECK_FALSE(in_domain(Family::Prop62, 5, 12));
  CHECK(in_domain(Family::MillerSmall, 4, 7));
  CHECK_FALSE(in_domain(Family::MillerSmall, 4, 8));
  CHECK(in_domain(Family::Conjecture, 3, 3));
}

TEST_CASE("sweeps")
{
  auto const empty = cmd_sweep(Family::Prop61, 5, 4, 1, 60);
  CHECK(empty.cells.empty());
  CHECK(exit_code(empty) == 0);
  CHECK(empty.summary().total == 0);

  RunOptions one;
  one.jobs = 1;
  RunOptions many;
  many.jobs = 4;
  auto const a = cmd_sweep(Family::Conjecture, 3, 5, 1, 30, one);
  auto const b = cmd_sweep(Family::Conjecture, 3, 5, 1, 30, many);
  CHECK(to_json(a) == to_json(b));
  CHECK(to_csv(a) == to_csv(b));

  auto const s = a.summary();
  CHECK(s.total == a.cells.size());
  CHECK(s.pass + s.fail + s.expected_fail + s.unexpected_pass + s.skip == s.total);
  CHECK(s.expected_fail == 3);
  CHECK(s.fail == 0);
  CHECK(exit_code(a) == 0);

  // cells ordered by (k, n), each exactly once
  for (std::size_t i = 1; i < a.cells.size(); ++i) {
    auto const &p = a.cells[i - 1];
    auto const &q = a.cells[i];
    CHECK(std::pair(p.k, p.n) < std::pair(q.k, q.n));
  }

  auto mixed = a;
  mixed.cells.back().outcome = Outcome::Fail;
  CHECK(exit_code(mixed) == 1);
  mixed.cells.back().outcome = Outcome::UnexpectedPass;
  CHECK(exit_code(mixed) == 1);
  mixed.cells.back().outcome = Outcome::Skip;
  CHECK(exit_code(mixed) == 0);
}

TEST_CASE("report formats")
{
  auto const r = cmd_verify(Family::Prop61, 3, 9);
  auto const j = to_json(r);
  CHECK(j.find("\"schema_version\": 1") != std::string::npos);
  CHECK(j.find("elapsed_ms") == std::string::npos);
  CHECK(to_json(r, true).find("elapsed_ms") != std::string::npos);
  auto const csv = to_csv(r);
  CHECK(csv.rfind("family,k,n,outcome", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("Wilson interval")
{
  auto [lo, hi] = wilson_interval(0, 10);
  CHECK(lo == 0.0);
  CHECK(hi > 0.0);
  std::tie(lo, hi) = wilson_interval(10, 10);
  CHECK(hi == doctest::Approx(1.0));
  std::tie(lo, hi) = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
  CHECK(code_of([] { wilson_interval(0, 0); }) == Errc::TrialsZero);
}

TEST_CASE("samplers")
{
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto const p = sample_order_k(4, 10, Sampler::MaxDisjointKCycles, rng);
    CHECK(order_of(p) == 4);
    CHECK(cycles_of(p).cycles.size() == 2);
    auto const u = sample_order_k(6, 9, Sampler::UniformOrderK, rng);
    CHECK(order_of(u) == 6);
  }
  CHECK(sampler_from_string("uniform_order_k") == Sampler::UniformOrderK);
  CHECK(code_of([] { sampler_from_string("gaussian"); }) == Errc::InvalidSampler);
}

TEST_CASE("estimator")
{
  auto const inv = cmd_estimate(2, 4, 1000, Sampler::MaxDisjointKCycles, 1);
  CHECK(inv.estimate < 1.0);
  CHECK(inv.estimate == doctest::Approx(exact_rate(2, 4)));
  CHECK(exact_rate(2, 4) == 0.0);

  auto const e = cmd_estimate(3, 4, 4000, Sampler::MaxDisjointKCycles, 7);
  double const exact = exact_rate(3, 4);
  CHECK(exact == doctest::Approx(0.75));
  CHECK(e.ci_low <= exact);
  CHECK(exact <= e.ci_high);
  CHECK(e.successes <= e.trials);
  CHECK(e.ci_low <= e.estimate);
  CHECK(e.estimate <= e.ci_high);

  RunOptions one;
  one.jobs = 1;
  RunOptions many;
  many.jobs = 3;
  auto const x = cmd_estimate(5, 12, 300, Sampler::UniformOrderK, 42, one);
  auto const y = cmd_estimate(5, 12, 300, Sampler::UniformOrderK, 42, many);
  CHECK(x == y);
  CHECK(to_json(x) == to_json(y));

  CHECK(code_of([] { cmd_estimate(3, 6, 0, Sampler::MaxDisjointKCycles, 1); }) ==
        Errc::TrialsZero);
}

TEST_CASE("result cache")
{
  TempDir dir("cache");
  ResultCache cache(dir.path);
  CHECK_FALSE(cache.lookup("a"));
  cache.store("a", "{\"x\":1}");
  CHECK(cache.lookup("a") == std::string("{\"x\":1}"));
  cache.store("a", "{\"x\":2}");
  CHECK(cache.lookup("a") == std::string("{\"x\":2}"));
  CHECK_FALSE(cache.lookup("b"));

  // Concurrent writers of one key leave a readable entry and no temp files.
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&, i] {
      for (int j = 0; j < 50; ++j)
        cache.store("shared", "{\"writer\":" + std::to_string(i) + "}");
    });
  for (auto &t : ts)
    t.join();
  auto const v = cache.lookup("shared");
  REQUIRE(v);
  CHECK(v->rfind("{\"writer\":", 0) == 0);
  for (auto const &entry : fs::directory_iterator(dir.path))
    CHECK(entry.path().extension() == ".json");
}

TEST_CASE("cached sweeps equal fresh sweeps")
{
  TempDir dir("sweep");
  RunOptions opt;
  opt.cache_dir = dir.path;
  auto const fresh = cmd_sweep(Family::Prop61, 3, 6, 1, 30);
  auto const first = cmd_sweep(Family::Prop61, 3, 6, 1, 30, opt);
  auto const second = cmd_sweep(Family::Prop61, 3, 6, 1, 30, opt);
  CHECK(to_json(fresh) == to_json(first));
  CHECK(to_json(fresh) == to_json(second));
  CHECK(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator{}) ==
        static_cast<long>(fresh.cells.size()));

  // A cached skip still raises the domain error from verify.
  auto const sk = cmd_sweep(Family::Conjecture, 4, 4, 11, 11, opt);
  REQUIRE(sk.cells.size() == 1);
  CHECK(sk.cells[0].outcome == Outcome::Skip);
  CHECK(code_of([&] { cmd_verify(Family::Conjecture, 4, 11, opt); }) == Errc::CaseUndefined);

  auto const e1 = cmd_estimate(4, 9, 50, Sampler::MaxDisjointKCycles, 5, opt);
  auto const e2 = cmd_estimate(4, 9, 50, Sampler::MaxDisjointKCycles, 5, opt);
  CHECK(e1 == e2);
}

TEST_CASE("cache directory resolution")
{
  ::unsetenv("TORSIONGEN_CACHE");
  CHECK_FALSE(resolve_cache_dir(std::nullopt));
  ::setenv("TORSIONGEN_CACHE", "/tmp/from-env", 1);
  CHECK(resolve_cache_dir(std::nullopt) == fs::path("/tmp/from-env"));
  CHECK(resolve_cache_dir(std::string("/tmp/flag")) == fs::path("/tmp/flag"));
  ::unsetenv("TORSIONGEN_CACHE");
}

TEST_CASE("mapping-class pipeline")
{
  auto const r = cmd_mcg(5, 18, Construction::Four);
  CHECK(r.passed());
  CHECK(r.stages.size() == 8);
  CHECK(r.word == "f^-1 f' g^-1 f^-1 f' g h f^-1 f' h^-1");
  CHECK(cmd_mcg(8, 21, Construction::Three).passed());
  CHECK(code_of([] { cmd_mcg(5, 7, Construction::Four); }) == Errc::RangeError);
  CHECK(code_of([] { cmd_mcg(5, 18, Construction::Three); }) == Errc::RangeError);
  CHECK(to_json(r) == to_json(cmd_mcg(5, 18, Construction::Four)));
}

TEST_CASE("hash")
{
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
