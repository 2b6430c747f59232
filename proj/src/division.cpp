#include "disprop/division.hpp"

#include "disprop/errors.hpp"

namespace disprop {

Rational Instance::demand_sum() const {
  Rational total;
  for (const Rational& d : demands) total += d;
  return total;
}

void Instance::validate(bool strict) const {
  if (measures.empty()) throw ValidationError("measures", "an instance needs at least one agent");
  if (demands.size() != measures.size()) {
    throw ValidationError("demands", "expected " + std::to_string(measures.size()) + " demands, got " +
                                         std::to_string(demands.size()));
  }
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i].sign() < 0) throw ValidationError("demands[" + std::to_string(i) + "]", "negative demand");
  }
  const Rational total = demand_sum();
  if (total > Rational(1)) throw ValidationError("demands", "demands sum to " + total.str() + " > 1");
  if (strict && total != Rational(1)) {
    throw ValidationError("demands", "demands sum to " + total.str() + ", expected exactly 1");
  }
}

Rational Division::piece_begin(std::size_t j) const { return j == 0 ? Rational(0) : cuts[j - 1]; }

Rational Division::piece_end(std::size_t j) const { return j == cuts.size() ? Rational(1) : cuts[j]; }

void Division::validate(std::size_t agents) const {
  if (owners.size() != cuts.size() + 1) {
    throw StructuralError("division with " + std::to_string(cuts.size()) + " cuts needs " +
                          std::to_string(cuts.size() + 1) + " owners, got " + std::to_string(owners.size()));
  }
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    if (cuts[j] <= Rational(0) || cuts[j] >= Rational(1)) {
      throw StructuralError("cut " + cuts[j].str() + " is not strictly inside (0,1)");
    }
    if (j > 0 && cuts[j - 1] >= cuts[j]) throw StructuralError("cuts must be strictly increasing");
  }
  for (std::size_t owner : owners) {
    if (owner >= agents) {
      throw StructuralError("owner index " + std::to_string(owner) + " out of range for " + std::to_string(agents) +
                            " agents");
    }
  }
}

Division Division::canonical() const {
  DivisionBuilder builder;
  for (std::size_t j = 0; j < owners.size(); ++j) builder.append(piece_end(j), owners[j]);
  return builder.finish();
}

Division Division::reflected() const {
  Division out;
  for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) out.cuts.push_back(Rational(1) - *it);
  out.owners.assign(owners.rbegin(), owners.rend());
  return out;
}

void DivisionBuilder::append(const Rational& end, std::size_t owner) {
  DISPROP_ASSERT(end >= end_, "pieces must be appended left to right");
  DISPROP_ASSERT(end <= Rational(1), "piece beyond 1");
  if (end == end_) return;
  if (!owners_.empty() && owners_.back() == owner) {
    ends_.back() = end;
  } else {
    ends_.push_back(end);
    owners_.push_back(owner);
  }
  end_ = end;
}

void DivisionBuilder::append_mapped(const Division& div, const Rational& a, const Rational& b) {
  DISPROP_ASSERT(end_ == a, "mapped division must start where the builder ends");
  const Rational width = b - a;
  for (std::size_t j = 0; j < div.owners.size(); ++j) append(a + div.piece_end(j) * width, div.owners[j]);
}

Division DivisionBuilder::finish() const {
  DISPROP_ASSERT(end_ == Rational(1), "division does not cover [0,1]");
  Division out;
  out.owners = owners_;
  out.cuts.assign(ends_.begin(), ends_.end() - 1);
  return out;
}

VerificationReport verify(const Instance& inst, const Division& div) {
  div.validate(inst.size());
  VerificationReport report;
  report.received.assign(inst.size(), Rational(0));
  for (std::size_t j = 0; j < div.owners.size(); ++j) {
    const std::size_t owner = div.owners[j];
    report.received[owner] += inst.measures[owner].interval_mass(div.piece_begin(j), div.piece_end(j));
  }
  report.valid = true;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    report.surplus.push_back(report.received[i] - inst.demands[i]);
    if (report.surplus.back().sign() < 0) report.valid = false;
  }
  report.cut_count = div.cut_count();
  return report;
}

long cut_count_bound(long n) {
  if (n < 1) throw DomainError("cut_count_bound requires n >= 1");
  return n == 1 ? 0 : 3 * n - 4;
}

}  // namespace disprop
