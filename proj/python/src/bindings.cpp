// JSON-in, JSON-out bindings. Every document uses the same format as the CLI.

#include <pybind11/pybind11.h>

#include "disprop/baseline.hpp"
#include "disprop/conjecture.hpp"
#include "disprop/errors.hpp"
#include "disprop/instances.hpp"
#include "disprop/json_io.hpp"
#include "disprop/pair.hpp"
#include "disprop/solver.hpp"

namespace py = pybind11;
using namespace disprop;

namespace {

Instance load(const std::string& text) { return json_io::read_instance(text); }

std::string solve(const std::string& instance, bool with_trace) {
  const auto r = solver::solve(load(instance));
  json_io::json out = json_io::to_json(r.division);
  if (with_trace) out = {{"division", out}, {"trace", json_io::to_json(r.trace)}};
  return json_io::dump(out);
}

std::string verify_division(const std::string& instance, const std::string& division) {
  return json_io::dump(json_io::to_json(verify(load(instance), json_io::read_division(division))));
}

std::string pair_(const std::string& instance, std::size_t list_limit) {
  const auto r = pair::solve_pair_explained(load(instance), list_limit);
  return json_io::dump({{"division", json_io::to_json(r.division)}, {"certificate", json_io::to_json(r.lemma)}});
}

std::string baseline_(const std::string& instance, const std::string& method) {
  const Instance inst = load(instance);
  if (method == "sliding") return json_io::write_division(baseline::sliding_knife_equal(inst));
  if (method == "denominator") return json_io::write_division(baseline::common_denominator(inst));
  throw py::value_error("method must be 'sliding' or 'denominator'");
}

std::string lower_bound(long n, const std::string& scale, const std::string& eps, const std::string& delta) {
  if (scale != "original" && scale != "desk") throw py::value_error("scale must be 'desk' or 'original'");
  instances::LowerBoundParams p = scale == "original" ? instances::LowerBoundParams::original(n)
                                                      : instances::LowerBoundParams::desk(n);
  if (!eps.empty()) p.eps = Rational::parse(eps);
  if (!delta.empty()) p.delta = Rational::parse(delta);
  return json_io::write_instance(instances::lower_bound_instance(p));
}

std::string random_instance(std::size_t n, std::size_t segments, std::uint64_t seed) {
  return json_io::write_instance(instances::random_instance(n, segments, seed));
}

std::string oracle(const std::string& instance, std::size_t max_cuts, std::size_t refine, std::uint64_t budget) {
  return json_io::dump(json_io::to_json(instances::oracle_min_cuts(load(instance), {max_cuts, refine, {}, budget})));
}

std::string search(const std::string& instance, std::size_t refine, std::uint64_t budget) {
  return json_io::dump(json_io::to_json(conjecture::search_witness(load(instance), {refine, budget})));
}

std::string campaign(std::size_t n, std::size_t count, std::uint64_t seed, std::uint64_t budget,
                     std::size_t segments) {
  conjecture::CampaignOptions opt;
  opt.n = n;
  opt.count = count;
  opt.seed = seed;
  opt.budget = budget;
  opt.max_segments = segments;
  std::string lines;
  for (const auto& rec : conjecture::stress_campaign(opt)) lines += json_io::dump_line(json_io::to_json(rec));
  return lines;
}

py::tuple check_trace(const std::string& instance, const std::string& trace) {
  const auto r = solver::check_trace(load(instance), json_io::trace_from_json(json_io::parse(trace)));
  return py::make_tuple(r.ok, r.path, r.message);
}

bool check_witness(const std::string& instance, const std::string& witness) {
  return conjecture::check_witness(load(instance), json_io::witness_from_json(json_io::parse(witness)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact disproportionate cake division (JSON string interface)";

  // Order matters: subclasses before the base.
  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<BudgetError> budget(m, "BudgetError", PyExc_RuntimeError);
  static py::exception<Error> base(m, "DispropError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const BudgetError& e) {
      py::set_error(budget, e.what());
    } catch (const InternalError& e) {
      py::set_error(PyExc_RuntimeError, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("solve", &solve, py::arg("instance"), py::arg("with_trace") = false);
  m.def("verify", &verify_division, py::arg("instance"), py::arg("division"));
  m.def("pair", &pair_, py::arg("instance"), py::arg("list_limit") = 1000);
  m.def("baseline", &baseline_, py::arg("instance"), py::arg("method") = "sliding");
  m.def("lower_bound", &lower_bound, py::arg("n"), py::arg("scale") = "desk", py::arg("eps") = "",
        py::arg("delta") = "");
  m.def("random_instance", &random_instance, py::arg("n"), py::arg("segments") = 4, py::arg("seed") = 0);
  m.def("oracle", &oracle, py::arg("instance"), py::arg("max_cuts") = 2, py::arg("refine") = 1,
        py::arg("budget") = 20'000'000);
  m.def("search", &search, py::arg("instance"), py::arg("refine") = 1, py::arg("budget") = 0);
  m.def("campaign", &campaign, py::arg("n"), py::arg("count"), py::arg("seed") = 0, py::arg("budget") = 0,
        py::arg("segments") = 3);
  m.def("check_trace", &check_trace, py::arg("instance"), py::arg("trace"));
  m.def("check_witness", &check_witness, py::arg("instance"), py::arg("witness"));
  m.def("cut_count_bound", &cut_count_bound, py::arg("n"));
}
