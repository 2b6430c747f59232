#pragma once

#include <cstddef>
#include <vector>

#include "disprop/measure.hpp"
#include "disprop/rational.hpp"

namespace disprop {

/// n agents, each with a measure and a non-negative demand.
struct Instance {
  std::vector<Measure> measures;
  std::vector<Rational> demands;

  std::size_t size() const { return measures.size(); }
  Rational demand_sum() const;

  /// Throws ValidationError. `strict` requires the demands to sum to exactly 1
  /// (user-facing instances); otherwise a sum <= 1 is accepted.
  void validate(bool strict) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Sorted interior cut points plus one owner per piece. Piece j runs from
/// cut j-1 (or 0) to cut j (or 1); endpoints carry no mass.
struct Division {
  std::vector<Rational> cuts;
  std::vector<std::size_t> owners;

  static Division whole(std::size_t owner) { return Division{{}, {owner}}; }

  std::size_t cut_count() const { return cuts.size(); }
  std::size_t piece_count() const { return owners.size(); }
  Rational piece_begin(std::size_t j) const;
  Rational piece_end(std::size_t j) const;

  /// Throws StructuralError on unsorted or out-of-range cuts, a wrong owner
  /// count, or an owner index >= agents.
  void validate(std::size_t agents) const;

  /// Merges adjacent pieces with the same owner.
  Division canonical() const;

  /// The same division read through theta -> 1 - theta.
  Division reflected() const;

  friend bool operator==(const Division&, const Division&) = default;
};

/// Accumulates pieces left to right, dropping empty pieces and merging
/// neighbours with the same owner.
class DivisionBuilder {
 public:
  /// Gives (current end, end] to `owner`. `end` must not go backwards.
  void append(const Rational& end, std::size_t owner);

  /// Appends every piece of `div` after affinely mapping [0,1] onto [a,b].
  /// The builder must currently end at a.
  void append_mapped(const Division& div, const Rational& a, const Rational& b);

  const Rational& end() const { return end_; }

  /// Requires the pieces to reach 1.
  Division finish() const;

 private:
  Rational end_{0};
  std::vector<Rational> ends_;
  std::vector<std::size_t> owners_;
};

struct VerificationReport {
  std::vector<Rational> received;
  std::vector<Rational> surplus;
  std::size_t cut_count = 0;
  bool valid = false;
};

/// Exact masses each agent receives and whether every demand is met.
VerificationReport verify(const Instance& inst, const Division& div);

/// 0 for one agent, 3n - 4 for n >= 2. DomainError for n < 1.
long cut_count_bound(long n);

}  // namespace disprop
