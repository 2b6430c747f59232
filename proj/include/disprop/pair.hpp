#pragma once

#include <cstddef>
#include <vector>

#include "disprop/division.hpp"
#include "disprop/measure.hpp"

namespace disprop::pair {

/// Evidence that the chosen arc exists by pigeonhole. With alpha = p/q the q
/// candidate arcs each carry m_eq-mass exactly alpha and together cover every
/// point of the circle exactly p times, so their m_ge-masses sum to p.
struct PigeonholeCertificate {
  BigInt p;
  BigInt q;
  BigInt chosen;              ///< 0-based index of the returned candidate
  Rational candidate_sum;     ///< sum of all q candidate m_ge-masses; equals p
  std::vector<Rational> candidate_masses;  ///< filled only when q <= the listing limit
};

struct CircleLemmaResult {
  CircleArc arc;
  PigeonholeCertificate certificate;
};

/// The j-th candidate arc (0 <= j < q): it starts at the m_eq-quantile of j/q
/// and spans p consecutive quantile blocks, wrapping through 0 if needed.
CircleArc candidate_arc(const Measure& m_eq, const Rational& alpha, const BigInt& j);

/// Arc X with m_eq(X) == alpha exactly and m_ge(X) >= alpha: the lowest-index
/// candidate arc that satisfies the inequality.
///
/// Runs in time polynomial in the number of density segments, independent of
/// the size of q: the candidate mass is a piecewise-linear function of the
/// start level j/q, so each linear piece is solved for its first qualifying
/// lattice point in closed form. `list_limit` bounds how many candidate
/// masses are listed in the certificate (listing is O(q)).
CircleLemmaResult circle_lemma(const Measure& m_eq, const Measure& m_ge, const Rational& alpha,
                               std::size_t list_limit = 0);

struct PairResult {
  Division division;
  CircleLemmaResult lemma;
};

/// Two-agent division with at most two cuts. Agent 0 receives the arc X from
/// circle_lemma(mu_1, mu_0, 1 - alpha_1), agent 1 its complement; the circle
/// is cut open at 0. PreconditionError unless the instance has two agents.
PairResult solve_pair_explained(const Instance& inst, std::size_t list_limit = 0);

inline Division solve_pair(const Instance& inst) { return solve_pair_explained(inst).division; }

}  // namespace disprop::pair
