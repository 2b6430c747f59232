// Command-line front end. Machine-readable JSON goes to files (or to stdout
// when no --out is given); one-line summaries go to stdout.
//
// Exit codes: 0 success, 1 internal error, 2 invalid input or parameters,
// 3 verification failure, 4 budget exhausted, 64 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "disprop/baseline.hpp"
#include "disprop/conjecture.hpp"
#include "disprop/errors.hpp"
#include "disprop/instances.hpp"
#include "disprop/json_io.hpp"
#include "disprop/pair.hpp"
#include "disprop/solver.hpp"

namespace {

using namespace disprop;
namespace fs = std::filesystem;
using json_io::json;

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInvalid = 2;
constexpr int kVerifyFailed = 3;
constexpr int kBudget = 4;
constexpr int kUsage = 64;

// An input or output file problem; reported like invalid input.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw FileError("cannot write " + path);
}

// Writes to `path`, or to stdout when it is empty.
void emit(const std::string& path, const json& j) {
  const std::string text = json_io::dump(j);
  if (path.empty()) {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

void summary(const std::string& path, const std::string& line) {
  if (!path.empty()) std::cout << line << "\n";
}

// Rethrows validation errors with the file name in front.
template <class F>
auto from_file(const std::string& path, F&& f) {
  try {
    return f(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + (e.field().empty() ? "" : ": " + e.field()),
                          std::string(e.what()).substr(e.field().empty() ? 0 : e.field().size() + 2));
  }
}

Instance load_instance(const std::string& path, bool strict) {
  return from_file(path, [&](const std::string& text) { return json_io::read_instance(text, strict); });
}

Division load_division(const std::string& path) {
  return from_file(path, [](const std::string& text) { return json_io::read_division(text); });
}

Rational parse_rational(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(flag, e.what());
  }
}

struct SolveArgs {
  std::string in, out, trace;
  bool check = false;
};

int run_solve(const SolveArgs& a) {
  const Instance inst = load_instance(a.in, true);
  const auto result = solver::solve(inst);
  if (a.check) {
    const auto tc = solver::check_trace(inst, result.trace);
    const auto report = verify(inst, result.division);
    if (!tc.ok || !report.valid) {
      std::cerr << "check failed" << (tc.ok ? "" : " at " + tc.path + ": " + tc.message) << "\n";
      return kVerifyFailed;
    }
  }
  emit(a.out, json_io::to_json(result.division));
  if (!a.trace.empty()) write_file(a.trace, json_io::dump(json_io::to_json(result.trace)));
  summary(a.out, "solved: " + std::to_string(result.division.cut_count()) + " cuts, root case " +
                     std::string(solver::to_string(result.trace.tag)));
  return kOk;
}

struct VerifyArgs {
  std::string in, div, out;
};

int run_verify(const VerifyArgs& a) {
  const Instance inst = load_instance(a.in, false);
  const Division div = load_division(a.div);
  VerificationReport report;
  try {
    report = verify(inst, div);
  } catch (const StructuralError& e) {
    throw ValidationError(a.div, e.what());
  }
  emit(a.out, json_io::to_json(report));
  std::string line = report.valid ? "valid" : "invalid";
  line += ": " + std::to_string(report.cut_count) + " cuts; surplus";
  for (const Rational& s : report.surplus) line += " " + s.str();
  summary(a.out, line);
  return report.valid ? kOk : kVerifyFailed;
}

struct PairArgs {
  std::string in, out, explain;
  std::size_t list_limit = 1000;
};

int run_pair(const PairArgs& a) {
  const Instance inst = load_instance(a.in, true);
  if (inst.size() == 2 && (Rational(1) - inst.demands[1]).denominator() > 1'000'000) {
    std::cerr << "warning: demand denominator above 10^6; candidate masses are not listed\n";
  }
  const auto r = pair::solve_pair_explained(inst, a.list_limit);
  emit(a.out, json_io::to_json(r.division));
  if (!a.explain.empty()) write_file(a.explain, json_io::dump(json_io::to_json(r.lemma)));
  summary(a.out, "pair: " + std::to_string(r.division.cut_count()) + " cuts, candidate " +
                     r.lemma.certificate.chosen.get_str() + " of " + r.lemma.certificate.q.get_str());
  return kOk;
}

struct BaselineArgs {
  std::string in, out, method;
};

int run_baseline(const BaselineArgs& a) {
  const Instance inst = load_instance(a.in, true);
  const Division d = a.method == "sliding" ? baseline::sliding_knife_equal(inst) : baseline::common_denominator(inst);
  emit(a.out, json_io::to_json(d));
  summary(a.out, a.method + ": " + std::to_string(d.cut_count()) + " cuts");
  return kOk;
}

struct GenerateArgs {
  std::string family, out, eps, delta, scale = "desk";
  long n = 2;
  std::size_t segments = 4;
  std::uint64_t seed = 0;
};

int run_generate(const GenerateArgs& a) {
  Instance inst;
  if (a.family == "lowerbound") {
    if (a.n < 2) throw ValidationError("--n", "lower-bound family needs n >= 2");
    auto params = a.scale == "original" ? instances::LowerBoundParams::original(a.n)
                                        : instances::LowerBoundParams::desk(a.n);
    if (!a.eps.empty()) params.eps = parse_rational(a.eps, "--eps");
    if (!a.delta.empty()) params.delta = parse_rational(a.delta, "--delta");
    inst = instances::lower_bound_instance(params);
  } else {
    if (a.n < 1) throw ValidationError("--n", "random family needs n >= 1");
    inst = instances::random_instance(static_cast<std::size_t>(a.n), a.segments, a.seed);
  }
  emit(a.out, json_io::to_json(inst));
  summary(a.out, "generated " + a.family + " instance with " + std::to_string(inst.size()) + " agents");
  return kOk;
}

struct OracleArgs {
  std::string in, out;
  std::size_t max_cuts = 2, refine = 1;
  std::uint64_t budget = 20'000'000;
};

int run_oracle(const OracleArgs& a) {
  const Instance inst = load_instance(a.in, false);
  const auto r = instances::oracle_min_cuts(inst, {a.max_cuts, a.refine, {}, a.budget});
  emit(a.out, json_io::to_json(r));
  summary(a.out, r.best_cuts ? "feasible with " + std::to_string(*r.best_cuts) + " cuts"
                             : "infeasible-on-grid up to " + std::to_string(a.max_cuts) + " cuts (evidence only)");
  return kOk;
}

struct SearchArgs {
  std::string in, out;
  std::size_t refine = 1;
  std::uint64_t budget = 0;
};

int run_search(const SearchArgs& a) {
  const Instance inst = load_instance(a.in, true);
  const auto r = conjecture::search_witness(inst, {a.refine, a.budget});
  emit(a.out, json_io::to_json(r));
  summary(a.out, std::string(conjecture::to_string(r.outcome)) + " after " + std::to_string(r.evaluated) + " of " +
                     std::to_string(r.planned) + " evaluations");
  return r.outcome == conjecture::Outcome::BudgetExhausted ? kBudget : kOk;
}

struct CampaignArgs {
  conjecture::CampaignOptions options;
  std::string out, counterexamples;
};

int run_campaign(const CampaignArgs& a) {
  const auto records = conjecture::stress_campaign(a.options);
  std::string lines;
  std::size_t found = 0, none = 0, exhausted = 0;
  if (!a.counterexamples.empty()) fs::create_directories(a.counterexamples);
  for (const auto& rec : records) {
    lines += json_io::dump_line(json_io::to_json(rec));
    switch (rec.result.outcome) {
      case conjecture::Outcome::Found: ++found; break;
      case conjecture::Outcome::BudgetExhausted: ++exhausted; break;
      case conjecture::Outcome::CertifiedNone:
        ++none;
        if (!a.counterexamples.empty()) {
          const fs::path file = fs::path(a.counterexamples) / ("instance-" + std::to_string(rec.index) + "-seed-" +
                                                               std::to_string(rec.seed) + ".json");
          write_file(file.string(), json_io::write_instance(rec.instance));
        }
        break;
    }
  }
  if (a.out.empty()) {
    std::cout << lines;
  } else {
    write_file(a.out, lines);
  }
  summary(a.out, "campaign: " + std::to_string(records.size()) + " instances, " + std::to_string(found) +
                     " witness, " + std::to_string(none) + " certified_none, " + std::to_string(exhausted) +
                     " budget_exhausted");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact disproportionate cake division"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Divide with at most 3n-4 cuts");
  s->add_option("--in", solve.in, "instance JSON")->required();
  s->add_option("--out", solve.out, "division JSON (default: stdout)");
  s->add_option("--trace", solve.trace, "write the recursion trace here");
  s->add_flag("--check", solve.check, "replay the trace and verify before writing");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check a division exactly; exit 3 if some demand is unmet");
  v->add_option("--in", ver.in, "instance JSON")->required();
  v->add_option("--div", ver.div, "division JSON")->required();
  v->add_option("--out", ver.out, "report JSON (default: stdout)");

  PairArgs pr;
  auto* p = app.add_subcommand("pair", "Two-agent division via the circle lemma");
  p->add_option("--in", pr.in, "two-agent instance JSON")->required();
  p->add_option("--out", pr.out, "division JSON (default: stdout)");
  p->add_option("--explain", pr.explain, "write the pigeonhole certificate here");
  p->add_option("--list-limit", pr.list_limit, "list candidate masses when q is at most this")->capture_default_str();

  BaselineArgs base;
  auto* b = app.add_subcommand("baseline", "Moving-knife baselines");
  b->add_option("--in", base.in, "instance JSON")->required();
  b->add_option("--out", base.out, "division JSON (default: stdout)");
  b->add_option("--method", base.method, "sliding or denominator")
      ->required()
      ->check(CLI::IsMember({"sliding", "denominator"}));

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate an instance");
  g->add_option("--family", gen.family, "lowerbound or random")
      ->required()
      ->check(CLI::IsMember({"lowerbound", "random"}));
  g->add_option("--n", gen.n, "number of agents")->required();
  g->add_option("--out", gen.out, "instance JSON (default: stdout)");
  g->add_option("--scale", gen.scale, "lowerbound defaults: desk (eps = 1/(10n^2), delta = eps^2) or original")
      ->check(CLI::IsMember({"desk", "original"}))
      ->capture_default_str();
  g->add_option("--eps", gen.eps, "lowerbound support half-width, e.g. 1/100");
  g->add_option("--delta", gen.delta, "lowerbound slack, e.g. 1/1000000");
  g->add_option("--segments", gen.segments, "random: max density segments per measure")->capture_default_str();
  g->add_option("--seed", gen.seed, "random: seed")->capture_default_str();

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Fewest cuts on a finite grid (infeasibility is evidence only)");
  o->add_option("--in", orc.in, "instance JSON")->required();
  o->add_option("--out", orc.out, "result JSON (default: stdout)");
  o->add_option("--max-cuts", orc.max_cuts, "largest cut count to try")->capture_default_str();
  o->add_option("--refine", orc.refine, "split every grid cell into this many parts")->capture_default_str();
  o->add_option("--budget", orc.budget, "max evaluations; exit 4 if a level would exceed it")->capture_default_str();

  auto* c = app.add_subcommand("conjecture", "Two-interval partition search on the circle");
  c->require_subcommand(1);
  SearchArgs sea;
  auto* cs = c->add_subcommand("search", "Decide one instance exactly");
  cs->add_option("--in", sea.in, "instance JSON")->required();
  cs->add_option("--out", sea.out, "result JSON (default: stdout)");
  cs->add_option("--refine", sea.refine, "grid refinement (the outcome does not depend on it)")->capture_default_str();
  cs->add_option("--budget", sea.budget, "max evaluations, 0 = unlimited; exit 4 when exhausted")
      ->capture_default_str();
  CampaignArgs camp;
  auto* cc = c->add_subcommand("campaign", "Search many random instances");
  cc->add_option("--n", camp.options.n, "agents per instance")->capture_default_str();
  cc->add_option("--count", camp.options.count, "number of instances")->capture_default_str();
  cc->add_option("--seed", camp.options.seed, "campaign seed")->capture_default_str();
  cc->add_option("--budget", camp.options.budget, "per-instance budget, 0 = unlimited")->capture_default_str();
  cc->add_option("--segments", camp.options.max_segments, "max density segments")->capture_default_str();
  cc->add_flag("--timing", camp.options.timing, "record wall time (makes reports non-reproducible)");
  cc->add_option("--out", camp.out, "JSON-lines report (default: stdout)");
  cc->add_option("--counterexamples", camp.counterexamples, "directory for certified_none instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (s->parsed()) return run_solve(solve);
    if (v->parsed()) return run_verify(ver);
    if (p->parsed()) return run_pair(pr);
    if (b->parsed()) return run_baseline(base);
    if (g->parsed()) return run_generate(gen);
    if (o->parsed()) return run_oracle(orc);
    if (cs->parsed()) return run_search(sea);
    if (cc->parsed()) return run_campaign(camp);
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
