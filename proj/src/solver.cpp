#include "disprop/solver.hpp"

#include <algorithm>
#include <numeric>

#include "disprop/errors.hpp"
#include "disprop/pair.hpp"

namespace disprop::solver {

namespace {

const Rational kZero(0);
const Rational kHalf(1, 2);
const Rational kOne(1);

Rational sum_over(const std::vector<Rational>& values, const std::vector<std::size_t>& idx) {
  Rational total;
  for (std::size_t i : idx) total += values[i];
  return total;
}

std::vector<std::size_t> with(std::vector<std::size_t> set, std::size_t extra) {
  set.insert(std::upper_bound(set.begin(), set.end(), extra), extra);
  return set;
}

Instance reflected(const Instance& inst) {
  Instance out;
  out.demands = inst.demands;
  for (const Measure& m : inst.measures) out.measures.push_back(m.reflected());
  return out;
}

// Child on [a,b] for `agents`, each claiming the given absolute share.
ChildSpec make_child(const Instance& inst, const Rational& a, const Rational& b, const std::vector<std::size_t>& agents,
                     const std::vector<Rational>& shares) {
  ChildSpec child{a, b, agents, {}};
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const Rational mass = inst.measures[agents[k]].interval_mass(a, b);
    DISPROP_ASSERT(mass.sign() > 0, "child agent has no mass on its interval");
    child.demands.push_back(shares[k] / mass);
  }
  return child;
}

// Shares for `agents` using the instance demands, with agent t (if present)
// claiming `t_share` instead.
std::vector<Rational> shares_for(const Instance& inst, const std::vector<std::size_t>& agents, std::size_t t,
                                 const Rational& t_share) {
  std::vector<Rational> out;
  for (std::size_t i : agents) out.push_back(i == t ? t_share : inst.demands[i]);
  return out;
}

// Case analysis once x is known with mu_t([0,x]) = 1/2, every other agent at
// most 1/2 there, and alpha_t > 1/2. Fills the plan in the given frame.
void continue_after_half(const Instance& inst, const Rational& x, std::size_t t, StepPlan& plan) {
  const auto& alpha = inst.demands;
  const std::size_t n = inst.size();
  const Measure& mt = inst.measures[t];
  const Rational at = alpha[t];
  const Rational y = mt.quantile(at);
  DISPROP_ASSERT(y > x, "y must lie right of x");
  plan.y = y;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == t) continue;
    others.push_back(i);
    (inst.measures[i].cdf(y) >= at ? plan.u : plan.v).push_back(i);
  }

  if (plan.u.empty()) {
    plan.tag = CaseTag::TAssignAtY;
    plan.assigned = Assignment{kZero, y, t};
    plan.children.push_back(make_child(inst, y, kOne, others, shares_for(inst, others, t, kZero)));
    return;
  }
  if (!plan.v.empty()) {
    plan.tag = CaseTag::UvSplit;
    const auto left = with(plan.u, t);
    const auto right = with(plan.v, t);
    plan.children.push_back(make_child(inst, kZero, y, left, shares_for(inst, left, t, at - sum_over(alpha, plan.u))));
    plan.children.push_back(
        make_child(inst, y, kOne, right, shares_for(inst, right, t, kOne - at - sum_over(alpha, plan.v))));
    return;
  }

  plan.tag = CaseTag::ZSplit;
  std::optional<Rational> z;
  std::size_t s = 0;
  for (std::size_t i : plan.u) {
    const EqualitySet eq = crossings(inst.measures[i], mt, x, y);
    DISPROP_ASSERT(!eq.empty(), "CDFs of s and t must meet on [x,y]");
    const Rational zi = eq.max();
    if (!z || zi > *z) {
      z = zi;
      s = i;
    }
  }
  const Rational beta = mt.cdf(*z);
  DISPROP_ASSERT(beta >= kHalf, "beta below 1/2");
  for (std::size_t i : plan.u) DISPROP_ASSERT(inst.measures[i].cdf(*z) >= beta, "U agent below beta at z");
  plan.z = z;
  plan.s = s;
  plan.beta = beta;
  std::vector<std::size_t> u_rest;
  for (std::size_t i : plan.u) {
    if (i != s) u_rest.push_back(i);
  }
  const auto left = with(u_rest, t);
  const auto right = with(std::vector<std::size_t>{s}, t);
  plan.children.push_back(make_child(inst, kZero, *z, left, shares_for(inst, left, t, beta - sum_over(alpha, u_rest))));
  plan.children.push_back(make_child(inst, *z, kOne, right, shares_for(inst, right, t, kOne - alpha[s] - beta)));
}

void unreflect(StepPlan& plan) {
  if (plan.assigned) plan.assigned = Assignment{kOne - plan.assigned->b, kOne - plan.assigned->a, plan.assigned->agent};
  for (ChildSpec& c : plan.children) {
    Rational a = kOne - c.b;
    c.b = kOne - c.a;
    c.a = a;
  }
  std::reverse(plan.children.begin(), plan.children.end());
}

struct NodeOutput {
  Division division;  // node frame, global owners
  CaseStep step;
};

NodeOutput solve_node(const Instance& inst, const std::vector<std::size_t>& ids, const Rational& lo,
                      const Rational& hi) {
  NodeOutput out;
  CaseStep& step = out.step;
  step.lo = lo;
  step.hi = hi;
  step.agents = ids;
  step.demands = inst.demands;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.demands[i].sign() > 0) active.push_back(i);
  }
  if (active.size() <= 1) {
    step.tag = CaseTag::BaseSingle;
    out.division = Division::whole(ids[active.empty() ? 0 : active.front()]);
    return out;
  }

  Instance sub;
  Rational total;
  for (std::size_t i : active) total += inst.demands[i];
  for (std::size_t i : active) {
    sub.measures.push_back(inst.measures[i]);
    sub.demands.push_back(inst.demands[i] / total);
  }
  auto global = [&](std::size_t local) { return ids[active[local]]; };
  auto globals = [&](const std::vector<std::size_t>& locals) {
    std::vector<std::size_t> g;
    for (std::size_t l : locals) g.push_back(global(l));
    return g;
  };

  if (sub.size() == 2) {
    step.tag = CaseTag::BasePair;
    Division d = pair::solve_pair(sub);
    for (std::size_t& o : d.owners) o = global(o);
    out.division = std::move(d);
    step.cuts = out.division.cut_count();
    return out;
  }

  StepPlan plan = plan_step(sub);
  step.tag = plan.tag;
  step.mirrored = plan.mirrored;
  step.x = plan.sweep.x;
  step.t = global(plan.sweep.t);
  step.p = globals(plan.sweep.p);
  step.q = globals(plan.sweep.q);
  step.alpha_left = plan.alpha_left;
  step.alpha_right = plan.alpha_right;
  step.y = plan.y;
  step.z = plan.z;
  step.beta = plan.beta;
  if (plan.s) step.s = global(*plan.s);
  step.u = globals(plan.u);
  step.v = globals(plan.v);
  if (plan.assigned) step.assigned = Assignment{plan.assigned->a, plan.assigned->b, global(plan.assigned->agent)};

  // Lay out the assigned piece and the children left to right.
  struct Part {
    Rational a;
    const ChildSpec* child;
  };
  std::vector<Part> parts;
  for (const ChildSpec& c : plan.children) parts.push_back({c.a, &c});
  if (plan.assigned) parts.push_back({plan.assigned->a, nullptr});
  std::sort(parts.begin(), parts.end(), [](const Part& l, const Part& r) { return l.a < r.a; });

  const Rational width = hi - lo;
  DivisionBuilder builder;
  for (const Part& part : parts) {
    if (!part.child) {
      builder.append(plan.assigned->b, global(plan.assigned->agent));
      continue;
    }
    const ChildSpec& c = *part.child;
    Instance child;
    for (std::size_t k = 0; k < c.agents.size(); ++k) {
      child.measures.push_back(sub.measures[c.agents[k]].restricted(c.a, c.b));
      child.demands.push_back(c.demands[k]);
    }
    DISPROP_ASSERT(child.demand_sum() <= kOne, "child demand sum exceeds 1");
    NodeOutput sub_out = solve_node(child, globals(c.agents), lo + c.a * width, lo + c.b * width);
    builder.append_mapped(sub_out.division, c.a, c.b);
    step.children.push_back(std::move(sub_out.step));
  }
  out.division = builder.finish();
  step.cuts = out.division.cut_count();
  return out;
}

}  // namespace

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::PqSplit: return "PQ_SPLIT";
    case CaseTag::HalfAssign: return "HALF_ASSIGN";
    case CaseTag::UvSplit: return "UV_SPLIT";
    case CaseTag::TAssignAtY: return "T_ASSIGN_AT_Y";
    case CaseTag::ZSplit: return "Z_SPLIT";
    case CaseTag::BasePair: return "BASE_PAIR";
    case CaseTag::BaseSingle: return "BASE_SINGLE";
  }
  return "?";
}

CaseTag case_tag_from_string(std::string_view text) {
  for (CaseTag tag : {CaseTag::PqSplit, CaseTag::HalfAssign, CaseTag::UvSplit, CaseTag::TAssignAtY, CaseTag::ZSplit,
                      CaseTag::BasePair, CaseTag::BaseSingle}) {
    if (to_string(tag) == text) return tag;
  }
  throw ValidationError("case", "unknown case tag '" + std::string(text) + "'");
}

SweepResult find_sweep(const Instance& inst) {
  const std::size_t n = inst.size();
  if (n < 2) throw PreconditionError("find_sweep needs at least two agents");
  const auto& alpha = inst.demands;

  // The counted demand only changes where some CDF first reaches 1/2, and
  // each such point is in a level set below, so this list is exhaustive.
  std::vector<Rational> candidates;
  for (const Measure& m : inst.measures) {
    candidates.insert(candidates.end(), m.breakpoints().begin(), m.breakpoints().end());
    const EqualitySet half = level_set(m, kHalf, kZero, kOne);
    candidates.insert(candidates.end(), half.points.begin(), half.points.end());
    for (const auto& [a, b] : half.intervals) {
      candidates.push_back(a);
      candidates.push_back(b);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const Rational& theta : candidates) {
    std::vector<Rational> cdf;
    Rational reached;
    for (std::size_t i = 0; i < n; ++i) {
      cdf.push_back(inst.measures[i].cdf(theta));
      if (cdf.back() >= kHalf) reached += alpha[i];
    }
    if (reached < kHalf) continue;

    SweepResult r;
    r.x = theta;
    Rational counted;
    for (std::size_t i = 0; i < n; ++i) {
      if (cdf[i] > kHalf) counted += alpha[i];
    }
    DISPROP_ASSERT(counted < kHalf, "agents strictly past 1/2 already suffice; x is not minimal");
    for (std::size_t i = 0; i < n; ++i) {
      if (cdf[i] != kHalf) continue;
      counted += alpha[i];
      if (counted >= kHalf) {
        r.t = i;
        break;
      }
    }
    DISPROP_ASSERT(inst.measures[r.t].cdf(theta) == kHalf, "mu_t([0,x]) must be exactly 1/2");
    for (std::size_t i = 0; i < n; ++i) {
      const bool in_s = cdf[i] > kHalf || (cdf[i] == kHalf && i <= r.t);
      if (in_s) r.s.push_back(i);
      if (in_s && i != r.t) r.p.push_back(i);
      if (!in_s) r.q.push_back(i);
    }
    return r;
  }
  throw PreconditionError("no sweep point: demands sum to " + inst.demand_sum().str() + " < 1/2");
}

StepPlan plan_step(const Instance& inst) {
  if (inst.size() < 2) throw PreconditionError("plan_step needs at least two agents");
  for (const Rational& d : inst.demands) {
    if (d.sign() <= 0) throw PreconditionError("plan_step needs positive demands");
  }
  if (inst.demand_sum() != kOne) throw PreconditionError("plan_step needs demands summing to 1");
  const auto& alpha = inst.demands;

  StepPlan plan;
  plan.sweep = find_sweep(inst);
  const SweepResult& sw = plan.sweep;
  const std::size_t t = sw.t;
  const Rational& x = sw.x;
  const Rational sum_p = sum_over(alpha, sw.p);
  const Rational sum_q = sum_over(alpha, sw.q);
  DISPROP_ASSERT(sum_p <= kHalf && sum_q <= kHalf, "P or Q claims more than half");

  if (!sw.p.empty() && !sw.q.empty()) {
    plan.tag = CaseTag::PqSplit;
    plan.alpha_left = kHalf - sum_p;
    plan.alpha_right = kHalf - sum_q;
    const auto left = with(sw.p, t);
    const auto right = with(sw.q, t);
    plan.children.push_back(make_child(inst, kZero, x, left, shares_for(inst, left, t, *plan.alpha_left)));
    plan.children.push_back(make_child(inst, x, kOne, right, shares_for(inst, right, t, *plan.alpha_right)));
    return plan;
  }

  DISPROP_ASSERT(alpha[t] >= kHalf, "one-sided sweep with alpha_t < 1/2");
  if (alpha[t] == kHalf) {
    plan.tag = CaseTag::HalfAssign;
    if (sw.p.empty()) {
      plan.assigned = Assignment{kZero, x, t};
      plan.children.push_back(make_child(inst, x, kOne, sw.q, shares_for(inst, sw.q, t, kZero)));
    } else {
      plan.assigned = Assignment{x, kOne, t};
      plan.children.push_back(make_child(inst, kZero, x, sw.p, shares_for(inst, sw.p, t, kZero)));
    }
    return plan;
  }

  if (sw.p.empty()) {
    continue_after_half(inst, x, t, plan);
  } else {
    plan.mirrored = true;
    continue_after_half(reflected(inst), kOne - x, t, plan);
    unreflect(plan);
  }
  return plan;
}

SolveResult solve(const Instance& inst) {
  inst.validate(false);
  std::vector<std::size_t> ids(inst.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  NodeOutput out = solve_node(inst, ids, kZero, kOne);
  const VerificationReport report = verify(inst, out.division);
  DISPROP_ASSERT(report.valid, "solver produced an invalid division");
  DISPROP_ASSERT(static_cast<long>(out.division.cut_count()) <= cut_count_bound(static_cast<long>(inst.size())),
                 "solver exceeded the cut bound");
  return SolveResult{std::move(out.division), std::move(out.step)};
}

}  // namespace disprop::solver
