// Thin bindings; reports cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torsiongen/constructions.hpp"
#include "torsiongen/error.hpp"
#include "torsiongen/genus.hpp"
#include "torsiongen/group.hpp"
#include "torsiongen/perm.hpp"
#include "torsiongen/sweep.hpp"

namespace py = pybind11;
using namespace torsiongen;

namespace
{

RunOptions options(unsigned jobs, std::optional<std::string> const &cache_dir)
{
  RunOptions opt;
  opt.jobs = jobs;
  opt.cache_dir = resolve_cache_dir(cache_dir);
  return opt;
}

std::vector<Permutation> parse_all(std::vector<std::string> const &gens, unsigned degree)
{
  std::vector<Permutation> out;
  for (auto const &g : gens)
    out.push_back(parse_cycles(g, degree));
  return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.attr("__version__") = "0.1.0";

  static py::handle const error =
    py::exception<Error>(m, "TorsiongenError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (Error const &e) {
      py::object exc = error(e.what());
      exc.attr("code") = std::string(errc_name(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def(
    "verify",
    [](std::string const &family, unsigned k, unsigned n, unsigned jobs,
       std::optional<std::string> cache_dir) {
      auto const r = cmd_verify(family_from_string(family), k, n, options(jobs, cache_dir));
      return py::make_tuple(to_json(r), exit_code(r));
    },
    py::arg("family"), py::arg("k"), py::arg("n"), py::arg("jobs") = 1,
    py::arg("cache_dir") = py::none());

  m.def(
    "sweep",
    [](std::string const &family, unsigned k_min, unsigned k_max, unsigned n_min, unsigned n_max,
       unsigned jobs, std::optional<std::string> cache_dir) {
      SweepReport r;
      {
        py::gil_scoped_release nogil;
        r = cmd_sweep(family_from_string(family), k_min, k_max, n_min, n_max,
                      options(jobs, cache_dir));
      }
      return py::make_tuple(to_json(r), exit_code(r));
    },
    py::arg("family"), py::arg("k_min"), py::arg("k_max"), py::arg("n_min"), py::arg("n_max"),
    py::arg("jobs") = 0, py::arg("cache_dir") = py::none());

  m.def(
    "estimate",
    [](unsigned k, unsigned n, std::uint64_t trials, std::string const &sampler,
       std::uint64_t seed, unsigned jobs) {
      EstimatorResult r;
      {
        py::gil_scoped_release nogil;
        r = cmd_estimate(k, n, trials, sampler_from_string(sampler), seed, options(jobs, {}));
      }
      return to_json(r);
    },
    py::arg("k"), py::arg("n"), py::arg("trials"), py::arg("sampler") = "max_disjoint_k_cycles",
    py::arg("seed") = 0, py::arg("jobs") = 0);

  m.def(
    "mcg",
    [](unsigned k, unsigned g, std::string const &variant) {
      auto const r = cmd_mcg(k, g, construction_from_string(variant));
      return py::make_tuple(to_json(r), r.passed());
    },
    py::arg("k"), py::arg("g"), py::arg("variant") = "four");

  m.def(
    "decompose",
    [](unsigned k, unsigned g, bool require_leading_k) -> std::optional<py::dict> {
      auto const d = decompose(k, g, require_leading_k);
      if (!d)
        return std::nullopt;
      py::dict out;
      out["k"] = d->k;
      out["a"] = d->a;
      out["b"] = d->b;
      out["plus_one"] = d->plus_one;
      return out;
    },
    py::arg("k"), py::arg("g"), py::arg("require_leading_k") = false);

  m.def("stable_bound", &stable_bound, py::arg("k"));

  m.def(
    "classify",
    [](std::vector<std::string> const &gens, unsigned degree) {
      auto const c = classify(parse_all(gens, degree));
      return py::make_tuple(to_string(c.kind), c.order.str());
    },
    py::arg("gens"), py::arg("degree"));

  m.def(
    "canonical_cycles",
    [](std::string const &text, unsigned degree) {
      return to_cycle_string(parse_cycles(text, degree));
    },
    py::arg("text"), py::arg("degree"));

  m.def(
    "order",
    [](std::string const &text, unsigned degree) { return order_of(parse_cycles(text, degree)); },
    py::arg("text"), py::arg("degree"));
}
