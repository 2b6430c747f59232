#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disprop/division.hpp"

namespace disprop::solver {

/// Outcome of the half-mass sweep over an instance.
///
/// x is the least point at which agents whose CDF has reached 1/2 (those
/// exactly at 1/2 admitted in index order up to t) claim at least half of the
/// demand; t is the least index achieving this at x. Indices are local to the
/// swept instance.
struct SweepResult {
  Rational x;
  std::size_t t = 0;
  std::vector<std::size_t> s;  ///< agents counted at (x, t)
  std::vector<std::size_t> p;  ///< s without t
  std::vector<std::size_t> q;  ///< everyone outside s
};

/// Requires n >= 2 and a demand sum of at least 1/2.
SweepResult find_sweep(const Instance& inst);

enum class CaseTag { PqSplit, HalfAssign, UvSplit, TAssignAtY, ZSplit, BasePair, BaseSingle };

std::string_view to_string(CaseTag tag);
CaseTag case_tag_from_string(std::string_view text);

/// A subproblem on [a,b] of the parent's frame. `demands` are already
/// rescaled: agent i's share divided by its mass on [a,b].
struct ChildSpec {
  Rational a;
  Rational b;
  std::vector<std::size_t> agents;
  std::vector<Rational> demands;
};

/// A piece handed out directly, without recursion.
struct Assignment {
  Rational a;
  Rational b;
  std::size_t agent;
};

/// One level of the recursion, in the local indices and frame of the
/// instance it was computed on.
///
/// For the mirrored case (Q empty, alpha_t > 1/2) the witnesses y, z, u, v, s
/// and beta refer to the reflected instance theta -> 1 - theta, while
/// `assigned` and `children` are always in the unreflected frame.
struct StepPlan {
  CaseTag tag = CaseTag::BaseSingle;
  SweepResult sweep;
  bool mirrored = false;
  std::optional<Rational> alpha_left;   ///< t's demand on [0,x] (PQ split)
  std::optional<Rational> alpha_right;  ///< t's demand on (x,1] (PQ split)
  std::optional<Rational> y;
  std::optional<Rational> z;
  std::optional<Rational> beta;
  std::optional<std::size_t> s;
  std::vector<std::size_t> u;
  std::vector<std::size_t> v;
  std::optional<Assignment> assigned;
  std::vector<ChildSpec> children;
};

/// The case analysis for one recursion level. Requires n >= 2, every demand
/// positive and the demands summing to exactly 1.
StepPlan plan_step(const Instance& inst);

/// A node of the recursion trace, in global terms: agents are indices of the
/// top-level instance and [lo, hi] is the node's interval in top-level
/// coordinates. Witness points (x, y, z) are in the node's own [0,1] frame,
/// reflected when `mirrored` is set.
struct CaseStep {
  CaseTag tag = CaseTag::BaseSingle;
  Rational lo;
  Rational hi{1};
  std::vector<std::size_t> agents;
  std::vector<Rational> demands;  ///< as received, before stripping and normalizing
  bool mirrored = false;

  std::optional<Rational> x;
  std::optional<std::size_t> t;
  std::vector<std::size_t> p;
  std::vector<std::size_t> q;
  std::optional<Rational> alpha_left;
  std::optional<Rational> alpha_right;
  std::optional<Rational> y;
  std::optional<Rational> z;
  std::optional<Rational> beta;
  std::optional<std::size_t> s;
  std::vector<std::size_t> u;
  std::vector<std::size_t> v;
  std::optional<Assignment> assigned;  ///< node frame, global agent id

  std::size_t cuts = 0;  ///< cuts in this node's division of its interval
  std::vector<CaseStep> children;
};

using Trace = CaseStep;

struct SolveResult {
  Division division;
  Trace trace;
};

/// Disproportionate division with at most max(0, 3n - 4) cuts.
///
/// Accepts demand sums <= 1. At every node zero-demand agents are dropped and
/// the remaining demands scaled up to sum to 1, which only tightens them.
SolveResult solve(const Instance& inst);

struct TraceCheck {
  bool ok = true;
  std::string path;     ///< slash-separated child indices of the first bad node
  std::string message;
};

/// Replays a trace against the instance it was produced for, rechecking
/// every case invariant from scratch and the cut accounting at every node.
TraceCheck check_trace(const Instance& inst, const Trace& trace);

}  // namespace disprop::solver
