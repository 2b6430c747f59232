#include "disprop/baseline.hpp"

#include <deque>
#include <optional>

#include "disprop/errors.hpp"

namespace disprop::baseline {

namespace {

// One real agent standing in for one or more virtual agents with a common
// threshold. `queue` holds the virtual indices of its unserved copies.
struct Claimant {
  std::size_t agent;
  Rational threshold;
  std::deque<std::size_t> queue;
};

Division run_knife(const Instance& inst, std::vector<Claimant> claimants, std::size_t virtual_count) {
  DivisionBuilder builder;
  Rational prev(0);
  std::size_t remaining = virtual_count;
  while (remaining > 1) {
    std::optional<Rational> best_x;
    Claimant* winner = nullptr;
    for (Claimant& c : claimants) {
      if (c.queue.empty()) continue;
      const Measure& m = inst.measures[c.agent];
      const Rational target = m.cdf(prev) + c.threshold;
      if (target > Rational(1)) continue;
      const Rational x = m.quantile(target);
      if (!best_x || x < *best_x || (x == *best_x && c.queue.front() < winner->queue.front())) {
        best_x = x;
        winner = &c;
      }
    }
    if (!winner) break;
    builder.append(*best_x, winner->agent);
    winner->queue.pop_front();
    prev = *best_x;
    --remaining;
  }
  // The rest goes to the lowest-indexed virtual agent still waiting.
  const Claimant* last = nullptr;
  for (const Claimant& c : claimants) {
    if (!c.queue.empty() && (!last || c.queue.front() < last->queue.front())) last = &c;
  }
  DISPROP_ASSERT(last != nullptr, "knife ran out of agents");
  builder.append(Rational(1), last->agent);
  return builder.finish();
}

}  // namespace

Division sliding_knife_rule(const Instance& inst) {
  inst.validate(false);
  std::vector<Claimant> claimants;
  for (std::size_t i = 0; i < inst.size(); ++i) claimants.push_back({i, inst.demands[i], {i}});
  return run_knife(inst, std::move(claimants), inst.size());
}

Division sliding_knife_equal(const Instance& inst) {
  inst.validate(false);
  const Rational share(1, static_cast<long>(inst.size()));
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.demands[i] != share) {
      throw PreconditionError("sliding knife needs every demand equal to " + share.str() + "; agent " +
                              std::to_string(i) + " demands " + inst.demands[i].str());
    }
  }
  return sliding_knife_rule(inst);
}

Division common_denominator(const Instance& inst) {
  inst.validate(false);
  if (inst.demand_sum() != Rational(1)) {
    throw PreconditionError("common-denominator reduction needs demands summing to 1");
  }
  const BigInt d = common_denominator_of(inst.demands);
  if (!d.fits_ulong_p()) throw PreconditionError("common denominator " + d.get_str() + " is too large");
  const Rational share(BigInt(1), d);

  std::vector<Claimant> claimants;
  std::vector<unsigned long> copies;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    claimants.push_back({i, share, {}});
    copies.push_back((inst.demands[i] * Rational(d)).numerator().get_ui());
  }
  // Round robin: round r lists every agent that still has an (r+1)-th copy.
  std::size_t next = 0;
  for (unsigned long round = 0; next < d.get_ui(); ++round) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (copies[i] > round) claimants[i].queue.push_back(next++);
    }
  }
  return run_knife(inst, std::move(claimants), d.get_ui());
}

}  // namespace disprop::baseline
