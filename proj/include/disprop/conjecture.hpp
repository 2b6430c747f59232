#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "disprop/division.hpp"

namespace disprop::conjecture {

/// A split of the agents into nonempty P and Q together with an arc X such
/// that min over P of mu_i(X) equals the total demand of P and min over Q of
/// mu_j(complement of X) equals the total demand of Q.
struct Witness {
  std::vector<std::size_t> p;
  std::vector<std::size_t> q;
  CircleArc arc;
  std::size_t attain_p = 0;  ///< an index in P attaining the minimum
  std::size_t attain_q = 0;  ///< an index in Q attaining the minimum
  Rational residual_p;       ///< min_P mu_i(X) - sum_P alpha; exactly 0
  Rational residual_q;       ///< min_Q mu_j(X^c) - sum_Q alpha; exactly 0
  bool degenerate = false;   ///< X empty or the whole circle

  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class Outcome { Found, CertifiedNone, BudgetExhausted };

std::string_view to_string(Outcome outcome);

struct SearchOptions {
  std::size_t refine = 1;    ///< split every grid cell into refine x refine sub-cells
  std::uint64_t budget = 0;  ///< max (subset, cell, attaining pair) evaluations; 0 = unlimited
};

struct SearchResult {
  Outcome outcome = Outcome::CertifiedNone;
  std::optional<Witness> witness;
  std::uint64_t evaluated = 0;  ///< (subset, cell, pair) triples examined
  std::uint64_t planned = 0;    ///< triples in the full enumeration
  std::size_t grid_points = 0;
};

/// Exact decision of the two-interval partition property for one instance of
/// piecewise-constant measures read on the circle.
///
/// Arcs are parametrized by their endpoints (a, b). On each cell of the grid
/// spanned by all breakpoints (cells on the diagonal split into the
/// non-wrapping and wrapping triangle) every arc mass is affine in (a, b), so
/// for a subset P, candidate minimizers i in P and j in Q, and a cell, the
/// conditions form a small linear system with linear side constraints. The
/// lexicographically least feasible point is taken. Enumeration order: P by
/// size then lexicographically, cells row-major in (a, b), pairs
/// lexicographically. CertifiedNone means no arc works for any split.
///
/// PreconditionError unless n >= 2 and the demands sum to exactly 1.
SearchResult search_witness(const Instance& inst, const SearchOptions& options = {});

/// Recomputes both residuals directly from arc masses; true iff the witness
/// is well formed and both residuals are exactly zero.
bool check_witness(const Instance& inst, const Witness& witness);

/// Every measure rotated by `offset` around the circle.
Instance rotated(const Instance& inst, const Rational& offset);

/// The same witness with its arc moved by `offset`.
Witness rotated(const Witness& witness, const Rational& offset);

struct CampaignOptions {
  std::size_t n = 3;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::size_t max_segments = 3;
  bool timing = false;  ///< record wall time; off by default so reports are reproducible
};

struct CampaignRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;  ///< seed of the generated instance
  Instance instance;
  SearchResult result;
  std::optional<double> elapsed_ms;
};

/// Seed of the k-th instance of a campaign.
std::uint64_t campaign_instance_seed(std::uint64_t campaign_seed, std::size_t k);

/// Runs search_witness on `count` random instances. Budget exhaustion is
/// recorded per instance and the campaign continues.
std::vector<CampaignRecord> stress_campaign(const CampaignOptions& options);

}  // namespace disprop::conjecture
