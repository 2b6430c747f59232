#include <algorithm>
#include <map>

#include "disprop/errors.hpp"
#include "disprop/solver.hpp"

namespace disprop::solver {

namespace {

const Rational kZero(0);
const Rational kHalf(1, 2);
const Rational kOne(1);

struct Failure {
  std::string message;
  std::string path;  // filled in by the innermost node that catches it
};

void require(bool cond, const std::string& message) {
  if (!cond) throw Failure{message, {}};
}

long f(long n) { return cut_count_bound(n); }

// Largest cut count the recurrence allows for a node of n active agents.
long recurrence_bound(long n) {
  long best = 1 + f(n - 1);
  for (long k = 2; k <= n - 1; ++k) best = std::max(best, 1 + f(k) + f(n + 1 - k));
  return best;
}

// What a node's child should look like, in node-frame coordinates and global ids.
struct ExpectedChild {
  Rational a;
  Rational b;
  std::vector<std::size_t> agents;
  std::vector<Rational> demands;
};

// The node's active agents after dropping zero demands, with normalized demands.
struct NodeView {
  std::vector<std::size_t> ids;             // global ids of active agents
  std::vector<Measure> measures;            // node frame
  std::vector<Rational> demands;            // normalized to sum 1
  std::map<std::size_t, std::size_t> local; // global id -> position

  const Measure& mu(std::size_t id) const { return measures.at(local.at(id)); }
  const Rational& alpha(std::size_t id) const { return demands.at(local.at(id)); }
  bool has(std::size_t id) const { return local.count(id) != 0; }
};

Rational sum_alpha(const NodeView& view, const std::vector<std::size_t>& ids) {
  Rational s;
  for (std::size_t id : ids) s += view.alpha(id);
  return s;
}

std::vector<std::size_t> plus(std::vector<std::size_t> ids, std::size_t extra) {
  ids.push_back(extra);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Child on [a,b] (frame coordinates, possibly reflected) where every agent
// keeps its demand except `t`, which claims `t_share`.
ExpectedChild expect(const NodeView& view, bool reflect, const Rational& a, const Rational& b,
                     const std::vector<std::size_t>& agents, std::size_t t, const Rational& t_share) {
  ExpectedChild c;
  c.a = reflect ? kOne - b : a;
  c.b = reflect ? kOne - a : b;
  c.agents = agents;
  for (std::size_t id : agents) {
    const Rational share = id == t ? t_share : view.alpha(id);
    const Rational mass = view.mu(id).interval_mass(a, b);  // [a,b] is in the frame of `view`
    require(mass.sign() > 0, "agent " + std::to_string(id) + " has no mass on its child interval");
    c.demands.push_back(share / mass);
  }
  return c;
}

void check_node(const Instance& root, const CaseStep& node, const std::string& path);

void check_children(const Instance& root, const CaseStep& node, const std::string& path,
                    std::vector<ExpectedChild> expected, std::size_t active) {
  std::sort(expected.begin(), expected.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  require(node.children.size() == expected.size(), "expected " + std::to_string(expected.size()) + " children, found " +
                                                       std::to_string(node.children.size()));
  const Rational width = node.hi - node.lo;
  long child_cuts = 0;
  std::size_t size_sum = 0;
  for (std::size_t c = 0; c < expected.size(); ++c) {
    const CaseStep& got = node.children[c];
    const ExpectedChild& want = expected[c];
    const std::string where = "child " + std::to_string(c) + ": ";
    Rational sum;
    for (const Rational& d : got.demands) sum += d;
    require(sum <= kOne, where + "demand sum " + sum.str() + " exceeds 1");
    require(got.lo == node.lo + want.a * width && got.hi == node.lo + want.b * width, where + "interval mismatch");
    require(got.agents == want.agents, where + "agent set mismatch");
    require(got.demands == want.demands, where + "demand mismatch");
    child_cuts += static_cast<long>(got.cuts);
    size_sum += got.agents.size();
    require(got.agents.size() >= 1 && got.agents.size() + 1 <= active, where + "child is not smaller than its parent");
  }

  // Cut accounting against the recurrence.
  const long n = static_cast<long>(active);
  require(static_cast<long>(node.cuts) <= 1 + child_cuts, "more cuts than one plus the children's");
  if (expected.size() == 2) {
    require(size_sum == active + 1, "split children sizes do not add up to n + 1");
    for (const ExpectedChild& e : expected) {
      require(e.agents.size() >= 2, "split child with fewer than two agents");
    }
  } else {
    require(size_sum == active - 1, "single child must hold the other n - 1 agents");
  }
  require(static_cast<long>(node.cuts) <= recurrence_bound(n), "cut count exceeds the recurrence bound");
  require(static_cast<long>(node.cuts) <= f(n), "cut count exceeds 3n - 4");

  for (std::size_t c = 0; c < node.children.size(); ++c) {
    check_node(root, node.children[c], path + "/" + std::to_string(c));
  }
}

void check_interior(const Instance& root, const CaseStep& node, const std::string& path, const NodeView& view) {
  require(node.x.has_value() && node.t.has_value(), "missing sweep witnesses");
  const Rational& x = *node.x;
  const std::size_t t = *node.t;
  require(view.has(t), "t is not an active agent");
  require(x > kZero && x < kOne, "x outside (0,1)");

  // Sweep invariants.
  require(view.mu(t).cdf(x) == kHalf, "mu_t([0,x]) != 1/2");
  std::vector<std::size_t> seen{t};
  for (std::size_t i : node.p) {
    require(view.has(i) && view.mu(i).cdf(x) >= kHalf, "P agent " + std::to_string(i) + " below 1/2 at x");
    seen.push_back(i);
  }
  for (std::size_t i : node.q) {
    require(view.has(i) && view.mu(i).cdf(x) <= kHalf, "Q agent " + std::to_string(i) + " above 1/2 at x");
    seen.push_back(i);
  }
  std::sort(seen.begin(), seen.end());
  require(seen == view.ids, "P, Q and t do not partition the agents");
  const Rational sum_p = sum_alpha(view, node.p);
  const Rational sum_q = sum_alpha(view, node.q);
  const Rational alpha_t = view.alpha(t);
  require(sum_p + alpha_t >= kHalf, "S(x,t) claims less than half");
  require(sum_p <= kHalf && sum_q <= kHalf, "P or Q claims more than half");

  std::vector<ExpectedChild> expected;
  switch (node.tag) {
    case CaseTag::PqSplit: {
      require(!node.p.empty() && !node.q.empty(), "PQ split with an empty side");
      require(node.alpha_left && node.alpha_right, "missing alpha' / alpha''");
      require(*node.alpha_left == kHalf - sum_p && *node.alpha_right == kHalf - sum_q, "alpha' / alpha'' mismatch");
      require(node.alpha_left->sign() >= 0 && node.alpha_right->sign() >= 0, "negative alpha' / alpha''");
      require(*node.alpha_left + *node.alpha_right == alpha_t, "alpha' + alpha'' != alpha_t");
      expected.push_back(expect(view, false, kZero, x, plus(node.p, t), t, *node.alpha_left));
      expected.push_back(expect(view, false, x, kOne, plus(node.q, t), t, *node.alpha_right));
      break;
    }
    case CaseTag::HalfAssign: {
      require(alpha_t == kHalf, "half assignment needs alpha_t = 1/2");
      require(node.p.empty() || node.q.empty(), "half assignment with both sides nonempty");
      require(node.assigned.has_value() && node.assigned->agent == t, "missing assignment to t");
      if (node.p.empty()) {
        require(node.assigned->a == kZero && node.assigned->b == x, "t should receive [0,x]");
        expected.push_back(expect(view, false, x, kOne, node.q, t, kZero));
      } else {
        require(node.assigned->a == x && node.assigned->b == kOne, "t should receive (x,1]");
        expected.push_back(expect(view, false, kZero, x, node.p, t, kZero));
      }
      break;
    }
    case CaseTag::TAssignAtY:
    case CaseTag::UvSplit:
    case CaseTag::ZSplit: {
      require(alpha_t > kHalf, "alpha_t must exceed 1/2");
      require(node.mirrored ? node.q.empty() : node.p.empty(), "wrong side empty for this orientation");
      NodeView frame = view;
      if (node.mirrored) {
        for (Measure& m : frame.measures) m = m.reflected();
      }
      const Rational xf = node.mirrored ? kOne - x : x;
      require(node.y.has_value(), "missing y");
      const Rational& y = *node.y;
      require(y > xf && y <= kOne, "y outside (x,1]");
      require(frame.mu(t).cdf(y) == alpha_t, "mu_t([0,y]) != alpha_t");
      require(frame.mu(t).quantile(alpha_t) == y, "y is not minimal");
      std::vector<std::size_t> others;
      for (std::size_t i : view.ids) {
        if (i != t) others.push_back(i);
      }
      std::vector<std::size_t> uv = node.u;
      uv.insert(uv.end(), node.v.begin(), node.v.end());
      std::sort(uv.begin(), uv.end());
      require(uv == others, "U and V do not partition the other agents");
      for (std::size_t i : node.u) require(frame.mu(i).cdf(y) >= alpha_t, "U agent below alpha_t at y");
      for (std::size_t i : node.v) require(frame.mu(i).cdf(y) < alpha_t, "V agent reaches alpha_t at y");

      if (node.tag == CaseTag::TAssignAtY) {
        require(node.u.empty(), "U must be empty");
        require(node.assigned.has_value() && node.assigned->agent == t, "missing assignment to t");
        const Rational a = node.mirrored ? kOne - y : kZero;
        const Rational b = node.mirrored ? kOne : y;
        require(node.assigned->a == a && node.assigned->b == b, "t should receive the piece up to y");
        expected.push_back(expect(frame, node.mirrored, y, kOne, others, t, kZero));
      } else if (node.tag == CaseTag::UvSplit) {
        require(!node.u.empty() && !node.v.empty(), "UV split with an empty side");
        const Rational left_t = alpha_t - sum_alpha(view, node.u);
        const Rational right_t = kOne - alpha_t - sum_alpha(view, node.v);
        require(left_t.sign() >= 0 && right_t.sign() >= 0, "negative demand for t");
        expected.push_back(expect(frame, node.mirrored, kZero, y, plus(node.u, t), t, left_t));
        expected.push_back(expect(frame, node.mirrored, y, kOne, plus(node.v, t), t, right_t));
      } else {
        require(node.v.empty(), "V must be empty");
        require(node.z && node.s && node.beta, "missing z, s or beta");
        const Rational& z = *node.z;
        const std::size_t s = *node.s;
        const Rational& beta = *node.beta;
        require(std::find(node.u.begin(), node.u.end(), s) != node.u.end(), "s not in U");
        require(z >= xf && z <= y, "z outside [x,y]");
        require(frame.mu(s).cdf(z) == beta && frame.mu(t).cdf(z) == beta, "mu_s, mu_t at z differ from beta");
        require(beta >= kHalf, "beta < 1/2");
        for (std::size_t i : node.u) {
          require(frame.mu(i).cdf(z) >= beta, "U agent below beta at z");
          const EqualitySet eq = crossings(frame.mu(i), frame.mu(t), z, y);
          require(eq.empty() || eq.max() == z, "z is not maximal");
        }
        std::vector<std::size_t> u_rest;
        for (std::size_t i : node.u) {
          if (i != s) u_rest.push_back(i);
        }
        const Rational left_t = beta - sum_alpha(view, u_rest);
        const Rational right_t = kOne - view.alpha(s) - beta;
        require(left_t.sign() >= 0, "negative demand for t on [0,z]");
        require(right_t.sign() >= 0, "negative demand for t on (z,1]");
        expected.push_back(expect(frame, node.mirrored, kZero, z, plus(u_rest, t), t, left_t));
        expected.push_back(expect(frame, node.mirrored, z, kOne, plus({s}, t), t, right_t));
      }
      break;
    }
    default:
      require(false, "unexpected case tag");
  }
  check_children(root, node, path, std::move(expected), view.ids.size());
}

void check_node(const Instance& root, const CaseStep& node, const std::string& path) {
  try {
    require(node.agents.size() == node.demands.size(), "agents and demands differ in length");
    require(node.lo < node.hi && node.lo >= kZero && node.hi <= kOne, "bad node interval");
    NodeView view;
    Rational total;
    for (std::size_t k = 0; k < node.agents.size(); ++k) {
      require(node.agents[k] < root.size(), "unknown agent");
      require(node.demands[k].sign() >= 0, "negative demand");
      total += node.demands[k];
    }
    require(total <= kOne, "demand sum " + total.str() + " exceeds 1");
    for (std::size_t k = 0; k < node.agents.size(); ++k) {
      if (node.demands[k].is_zero()) continue;
      const std::size_t id = node.agents[k];
      const Measure& m = root.measures[id];
      view.local[id] = view.ids.size();
      view.ids.push_back(id);
      const bool whole = node.lo == kZero && node.hi == kOne;
      view.measures.push_back(whole ? m : m.restricted(node.lo, node.hi));
      view.demands.push_back(node.demands[k] / total);
    }

    switch (node.tag) {
      case CaseTag::BaseSingle:
        require(view.ids.size() <= 1, "single-agent base case with several active agents");
        require(node.cuts == 0 && node.children.empty(), "single-agent base case must not cut");
        return;
      case CaseTag::BasePair:
        require(view.ids.size() == 2, "pair base case needs two active agents");
        require(static_cast<long>(node.cuts) <= f(2) && node.children.empty(), "pair base case exceeds two cuts");
        return;
      default:
        require(view.ids.size() >= 3, "recursive case with fewer than three active agents");
        check_interior(root, node, path, view);
    }
  } catch (Failure& failure) {
    if (failure.path.empty()) failure.path = path;
    throw;
  } catch (const std::exception& e) {
    throw Failure{std::string("replay raised: ") + e.what(), path};
  }
}

}  // namespace

TraceCheck check_trace(const Instance& inst, const Trace& trace) {
  TraceCheck result;
  try {
    check_node(inst, trace, "root");
  } catch (const Failure& failure) {
    result.ok = false;
    result.path = failure.path;
    result.message = failure.message;
  }
  return result;
}

}  // namespace disprop::solver
