#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "disprop/rational.hpp"

namespace disprop {

/// Non-atomic probability measure on [0,1] with a piecewise-constant density.
///
/// Breakpoints run from 0 to 1, strictly increasing; one non-negative density
/// per segment; total mass exactly 1. Adjacent segments of equal density are
/// merged on construction, so two measures compare equal iff they are the same
/// measure. The CDF is continuous and piecewise linear.
class Measure {
 public:
  /// Validates and canonicalizes. Throws ValidationError.
  Measure(std::vector<Rational> breakpoints, std::vector<Rational> densities);

  /// Density 1 on [0,1].
  static Measure uniform();

  /// Uniform on [a,b] and zero elsewhere. Requires 0 <= a < b <= 1.
  static Measure uniform_on(const Rational& a, const Rational& b);

  /// Scales non-negative segment weights so the total mass becomes 1.
  static Measure normalized(std::vector<Rational> breakpoints, std::vector<Rational> weights);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& densities() const { return densities_; }
  std::size_t segments() const { return densities_.size(); }

  /// mass([0,theta]). DomainError unless 0 <= theta <= 1.
  Rational cdf(const Rational& theta) const;

  /// Minimal theta with cdf(theta) == p. DomainError unless 0 <= p <= 1.
  Rational quantile(const Rational& p) const;

  /// mass((a,b)) for 0 <= a <= b <= 1; endpoint conventions are irrelevant.
  Rational interval_mass(const Rational& a, const Rational& b) const;

  /// The measure conditioned on [a,b] and pulled back to [0,1] affinely.
  /// DomainError when [a,b] has zero mass or a >= b.
  Measure restricted(const Rational& a, const Rational& b) const;

  /// Image under theta -> 1 - theta.
  Measure reflected() const;

  /// Image under the circle rotation theta -> theta + offset (mod 1).
  Measure rotated(const Rational& offset) const;

  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  Measure() = default;
  void canonicalize();
  std::size_t segment_of(const Rational& theta) const;

  std::vector<Rational> breakpoints_;
  std::vector<Rational> densities_;
  std::vector<Rational> cumulative_;  // cdf at each breakpoint
};

/// Closed arc {start + u mod 1 : 0 <= u <= length} of the circle R/Z.
/// Length 0 is the empty arc; length 1 is the whole circle.
struct CircleArc {
  Rational start;
  Rational length;

  /// The arc covering the rest of the circle.
  CircleArc complement() const;
  bool wraps() const { return start + length > Rational(1); }
  void validate() const;

  friend bool operator==(const CircleArc&, const CircleArc&) = default;
};

/// Mass of an arc under a measure read on the circle.
Rational arc_mass(const Measure& m, const CircleArc& arc);

/// Zero set of a continuous piecewise-linear function on a closed interval:
/// isolated points and maximal closed intervals, disjoint and sorted.
struct EqualitySet {
  std::vector<Rational> points;
  std::vector<std::pair<Rational, Rational>> intervals;

  bool empty() const { return points.empty() && intervals.empty(); }
  bool contains(const Rational& theta) const;
  /// Smallest / largest element of the set. Requires !empty().
  Rational min() const;
  Rational max() const;
};

/// All theta in [a,b] with m1.cdf(theta) == m2.cdf(theta).
EqualitySet crossings(const Measure& m1, const Measure& m2, const Rational& a, const Rational& b);

/// All theta in [a,b] with m.cdf(theta) == level.
EqualitySet level_set(const Measure& m, const Rational& level, const Rational& a, const Rational& b);

}  // namespace disprop
