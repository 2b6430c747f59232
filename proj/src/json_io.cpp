#include "disprop/json_io.hpp"

#include "disprop/errors.hpp"

namespace disprop::json_io {

namespace {

std::string at_index(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

std::string member(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

const json& require(const json& j, const std::string& field, const std::string& key) {
  if (!j.is_object()) throw ValidationError(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(member(field, key), "missing");
  return *it;
}

const json& require_array(const json& j, const std::string& field, const std::string& key) {
  const json& a = require(j, field, key);
  if (!a.is_array()) throw ValidationError(member(field, key), "expected an array");
  return a;
}

std::vector<Rational> rationals_from(const json& j, const std::string& field, const std::string& key) {
  const json& a = require_array(j, field, key);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_from_json(a[i], at_index(member(field, key), i)));
  return out;
}

std::size_t index_from(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ValidationError(field, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> indices_from(const json& j, const std::string& field, const std::string& key) {
  const json& a = require_array(j, field, key);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(index_from(a[i], at_index(member(field, key), i)));
  return out;
}

json rationals(const std::vector<Rational>& rs) {
  json a = json::array();
  for (const Rational& r : rs) a.push_back(to_json(r));
  return a;
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& value) {
  if (!value) return;
  if constexpr (std::is_same_v<T, Rational>) {
    j[key] = to_json(*value);
  } else {
    j[key] = *value;
  }
}

std::optional<Rational> opt_rational(const json& j, const std::string& field, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return rational_from_json(*it, member(field, key));
}

std::optional<std::size_t> opt_index(const json& j, const std::string& field, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return index_from(*it, member(field, key));
}

// Prefixes the field of a nested ValidationError.
template <class F>
auto within(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    if (e.field().rfind(field, 0) == 0) throw;
    const std::string what = e.what();
    const std::string reason = e.field().empty() ? what : what.substr(e.field().size() + 2);
    throw ValidationError(member(field, e.field()), reason);
  }
}

solver::CaseStep trace_node_from(const json& j, const std::string& field) {
  solver::CaseStep s;
  const json& tag = require(j, field, "case");
  if (!tag.is_string()) throw ValidationError(member(field, "case"), "expected a string");
  s.tag = within(member(field, "case"), [&] { return solver::case_tag_from_string(tag.get<std::string>()); });
  s.lo = rational_from_json(require(j, field, "lo"), member(field, "lo"));
  s.hi = rational_from_json(require(j, field, "hi"), member(field, "hi"));
  s.agents = indices_from(j, field, "agents");
  s.demands = rationals_from(j, field, "demands");
  const json& mirrored = require(j, field, "mirrored");
  if (!mirrored.is_boolean()) throw ValidationError(member(field, "mirrored"), "expected a boolean");
  s.mirrored = mirrored.get<bool>();
  s.x = opt_rational(j, field, "x");
  s.t = opt_index(j, field, "t");
  if (j.contains("p")) s.p = indices_from(j, field, "p");
  if (j.contains("q")) s.q = indices_from(j, field, "q");
  s.alpha_left = opt_rational(j, field, "alpha_left");
  s.alpha_right = opt_rational(j, field, "alpha_right");
  s.y = opt_rational(j, field, "y");
  s.z = opt_rational(j, field, "z");
  s.beta = opt_rational(j, field, "beta");
  s.s = opt_index(j, field, "s");
  if (j.contains("u")) s.u = indices_from(j, field, "u");
  if (j.contains("v")) s.v = indices_from(j, field, "v");
  if (auto it = j.find("assigned"); it != j.end()) {
    const std::string f = member(field, "assigned");
    s.assigned = solver::Assignment{rational_from_json(require(*it, f, "a"), member(f, "a")),
                                    rational_from_json(require(*it, f, "b"), member(f, "b")),
                                    index_from(require(*it, f, "agent"), member(f, "agent"))};
  }
  s.cuts = index_from(require(j, field, "cuts"), member(field, "cuts"));
  const json& children = require_array(j, field, "children");
  for (std::size_t i = 0; i < children.size(); ++i) {
    s.children.push_back(trace_node_from(children[i], at_index(member(field, "children"), i)));
  }
  return s;
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j, const std::string& field) {
  if (!j.is_string()) throw ValidationError(field, "expected a rational string such as \"3/4\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(field, e.what());
  }
}

json to_json(const Measure& m) {
  return json{{"breakpoints", rationals(m.breakpoints())}, {"densities", rationals(m.densities())}};
}

Measure measure_from_json(const json& j, const std::string& field) {
  auto bps = rationals_from(j, field, "breakpoints");
  auto dens = rationals_from(j, field, "densities");
  return within(field, [&] { return Measure(std::move(bps), std::move(dens)); });
}

json to_json(const Instance& inst) {
  json ms = json::array();
  for (const Measure& m : inst.measures) ms.push_back(to_json(m));
  return json{{"measures", ms}, {"demands", rationals(inst.demands)}};
}

Instance instance_from_json(const json& j, bool strict) {
  Instance inst;
  const json& ms = require_array(j, "", "measures");
  for (std::size_t i = 0; i < ms.size(); ++i) inst.measures.push_back(measure_from_json(ms[i], at_index("measures", i)));
  inst.demands = rationals_from(j, "", "demands");
  inst.validate(strict);
  return inst;
}

json to_json(const Division& div) {
  const Division c = div.canonical();
  return json{{"cuts", rationals(c.cuts)}, {"owners", c.owners}};
}

Division division_from_json(const json& j) {
  Division div;
  div.cuts = rationals_from(j, "", "cuts");
  div.owners = indices_from(j, "", "owners");
  if (div.owners.size() != div.cuts.size() + 1) {
    throw ValidationError("owners", "expected " + std::to_string(div.cuts.size() + 1) + " owners for " +
                                        std::to_string(div.cuts.size()) + " cuts");
  }
  for (std::size_t i = 0; i < div.cuts.size(); ++i) {
    if (div.cuts[i] <= Rational(0) || div.cuts[i] >= Rational(1)) {
      throw ValidationError(at_index("cuts", i), "cut must lie strictly inside (0,1)");
    }
    if (i > 0 && div.cuts[i] <= div.cuts[i - 1]) {
      throw ValidationError(at_index("cuts", i), "cuts must be strictly increasing");
    }
  }
  return div;
}

json to_json(const VerificationReport& report) {
  return json{{"received", rationals(report.received)},
              {"surplus", rationals(report.surplus)},
              {"cut_count", report.cut_count},
              {"valid", report.valid}};
}

json to_json(const CircleArc& arc) { return json{{"start", to_json(arc.start)}, {"length", to_json(arc.length)}}; }

CircleArc arc_from_json(const json& j, const std::string& field) {
  CircleArc arc{rational_from_json(require(j, field, "start"), member(field, "start")),
                rational_from_json(require(j, field, "length"), member(field, "length"))};
  try {
    arc.validate();
  } catch (const DomainError& e) {
    throw ValidationError(field, e.what());
  }
  return arc;
}

json to_json(const solver::CaseStep& s) {
  json j{{"case", std::string(solver::to_string(s.tag))},
         {"lo", to_json(s.lo)},
         {"hi", to_json(s.hi)},
         {"agents", s.agents},
         {"demands", rationals(s.demands)},
         {"mirrored", s.mirrored},
         {"cuts", s.cuts}};
  put(j, "x", s.x);
  put(j, "t", s.t);
  if (!s.p.empty()) j["p"] = s.p;
  if (!s.q.empty()) j["q"] = s.q;
  put(j, "alpha_left", s.alpha_left);
  put(j, "alpha_right", s.alpha_right);
  put(j, "y", s.y);
  put(j, "z", s.z);
  put(j, "beta", s.beta);
  put(j, "s", s.s);
  if (!s.u.empty()) j["u"] = s.u;
  if (!s.v.empty()) j["v"] = s.v;
  if (s.assigned) {
    j["assigned"] = json{{"a", to_json(s.assigned->a)}, {"b", to_json(s.assigned->b)}, {"agent", s.assigned->agent}};
  }
  json children = json::array();
  for (const auto& c : s.children) children.push_back(to_json(c));
  j["children"] = children;
  return j;
}

solver::CaseStep trace_from_json(const json& j) { return trace_node_from(j, "trace"); }

json to_json(const pair::CircleLemmaResult& lemma) {
  const auto& c = lemma.certificate;
  json j{{"arc", to_json(lemma.arc)},
         {"p", c.p.get_str()},
         {"q", c.q.get_str()},
         {"chosen", c.chosen.get_str()},
         {"candidate_sum", to_json(c.candidate_sum)}};
  if (!c.candidate_masses.empty()) j["candidate_masses"] = rationals(c.candidate_masses);
  return j;
}

json to_json(const instances::OracleResult& result) {
  json j{{"grid_points", result.grid_points},
         {"grid_refine", result.grid_refine},
         {"evaluated", result.evaluated},
         {"status", result.evidence_only() ? "infeasible-on-grid" : "feasible"},
         {"evidence_only", result.evidence_only()}};
  if (result.best_cuts) j["best_cuts"] = *result.best_cuts;
  if (result.witness) j["witness"] = to_json(*result.witness);
  return j;
}

json to_json(const conjecture::Witness& w) {
  return json{{"p", w.p},
              {"q", w.q},
              {"arc", to_json(w.arc)},
              {"attain_p", w.attain_p},
              {"attain_q", w.attain_q},
              {"residual_p", to_json(w.residual_p)},
              {"residual_q", to_json(w.residual_q)},
              {"degenerate", w.degenerate}};
}

conjecture::Witness witness_from_json(const json& j) {
  conjecture::Witness w;
  w.p = indices_from(j, "", "p");
  w.q = indices_from(j, "", "q");
  w.arc = arc_from_json(require(j, "", "arc"), "arc");
  w.attain_p = index_from(require(j, "", "attain_p"), "attain_p");
  w.attain_q = index_from(require(j, "", "attain_q"), "attain_q");
  w.residual_p = rational_from_json(require(j, "", "residual_p"), "residual_p");
  w.residual_q = rational_from_json(require(j, "", "residual_q"), "residual_q");
  const json& d = require(j, "", "degenerate");
  if (!d.is_boolean()) throw ValidationError("degenerate", "expected a boolean");
  w.degenerate = d.get<bool>();
  return w;
}

json to_json(const conjecture::SearchResult& result) {
  json j{{"outcome", std::string(conjecture::to_string(result.outcome))},
         {"evaluated", result.evaluated},
         {"planned", result.planned},
         {"grid_points", result.grid_points}};
  if (result.witness) j["witness"] = to_json(*result.witness);
  return j;
}

json to_json(const conjecture::CampaignRecord& record) {
  json j{{"index", record.index}, {"seed", record.seed}, {"result", to_json(record.result)}};
  if (record.result.outcome == conjecture::Outcome::CertifiedNone) j["instance"] = to_json(record.instance);
  if (record.elapsed_ms) j["elapsed_ms"] = *record.elapsed_ms;
  return j;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string dump_line(const json& j) { return j.dump() + "\n"; }

Instance read_instance(std::string_view text, bool strict) { return instance_from_json(parse(text), strict); }

std::string write_instance(const Instance& inst) { return dump(to_json(inst)); }

Division read_division(std::string_view text) { return division_from_json(parse(text)); }

std::string write_division(const Division& div) { return dump(to_json(div)); }

}  // namespace disprop::json_io
