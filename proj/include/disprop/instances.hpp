#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "disprop/division.hpp"

namespace disprop::instances {

/// Lower-bound family: agent 0 uniform on [0,1] demanding 1 - delta, and for
/// i = 1..n-1 agent i uniform on [i/n - eps, i/n + eps] demanding delta/(n-1).
struct LowerBoundParams {
  long n = 2;
  Rational eps;
  Rational delta;

  /// ParameterError (DomainError) unless n >= 2, 0 < eps < 1/(2n), 0 < delta < eps.
  void validate() const;

  /// eps = 1/(10 n^2), delta = eps^2: readable numbers, same phenomenon.
  static LowerBoundParams desk(long n);
  /// eps = 1/(100 n)^10, delta = eps^10.
  static LowerBoundParams original(long n);
};

Instance lower_bound_instance(const LowerBoundParams& params);

/// For each small-support agent i = 1..n-1, the number of cut points (and
/// domain endpoints) inside [i/n - eps - delta, i/n + eps + delta]. Every
/// valid division has at least two in each window.
std::vector<std::size_t> count_support_cuts(const LowerBoundParams& params, const Division& div);

/// Deterministic random instance: each measure has between 1 and
/// `max_segments` density segments with rational breakpoints, densities are
/// normalized exactly, demands form a random rational composition of 1
/// (occasionally with zero parts).
Instance random_instance(std::size_t n, std::size_t max_segments, std::uint64_t seed);

/// std::mt19937_64 with a portable bounded draw: the engine's output
/// sequence is fixed by the standard, the std distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound). Requires bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

struct OracleOptions {
  std::size_t max_cuts = 2;
  std::size_t grid_refine = 1;
  std::vector<Rational> extra_points;  ///< added to the grid before refinement
  std::uint64_t budget = 20'000'000;   ///< max (cut tuple, owner sequence) pairs examined
};

struct OracleResult {
  std::size_t grid_points = 0;  ///< interior grid points considered
  std::size_t grid_refine = 1;
  std::optional<std::size_t> best_cuts;  ///< empty: infeasible on the grid
  std::optional<Division> witness;
  std::uint64_t evaluated = 0;

  /// Infeasibility on a finite grid is evidence only, never a proof.
  bool evidence_only() const { return !best_cuts.has_value(); }
};

/// The finite set of interior cut positions the oracle draws from: all
/// breakpoints, the quantiles of every measure at every demand, its
/// complement and every prefix sum of demands, plus `extra`, with every
/// resulting cell split into `refine` equal parts.
std::vector<Rational> oracle_grid(const Instance& inst, std::size_t refine, const std::vector<Rational>& extra);

/// Fewest cuts (up to max_cuts) with which some division on the grid passes
/// exact verification. BudgetError before any cut level whose enumeration
/// would overrun the budget.
OracleResult oracle_min_cuts(const Instance& inst, const OracleOptions& options);

}  // namespace disprop::instances
