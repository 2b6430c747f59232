#include "disprop/instances.hpp"

#include <algorithm>
#include <numeric>

#include "disprop/errors.hpp"

namespace disprop::instances {

namespace {

const Rational kZero(0);
const Rational kOne(1);

Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned k = 0; k < exponent; ++k) out *= base;
  return out;
}

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

void LowerBoundParams::validate() const {
  if (n < 2) throw DomainError("lower-bound family needs n >= 2");
  if (eps.sign() <= 0) throw DomainError("eps must be positive");
  if (eps >= Rational(1, 2 * n)) throw DomainError("eps " + eps.str() + " must be below 1/(2n) = " + Rational(1, 2 * n).str());
  if (delta.sign() <= 0) throw DomainError("delta must be positive");
  if (delta >= eps) throw DomainError("delta " + delta.str() + " must be below eps");
}

LowerBoundParams LowerBoundParams::desk(long n) {
  LowerBoundParams p;
  p.n = n;
  p.eps = Rational(1, 10 * n * n);
  p.delta = p.eps * p.eps;
  return p;
}

LowerBoundParams LowerBoundParams::original(long n) {
  LowerBoundParams p;
  p.n = n;
  p.eps = pow(Rational(1, 100 * n), 10);
  p.delta = pow(p.eps, 10);
  return p;
}

Instance lower_bound_instance(const LowerBoundParams& params) {
  params.validate();
  Instance inst;
  inst.measures.push_back(Measure::uniform());
  inst.demands.push_back(kOne - params.delta);
  const Rational small = params.delta / Rational(params.n - 1);
  for (long i = 1; i < params.n; ++i) {
    const Rational centre(i, params.n);
    inst.measures.push_back(Measure::uniform_on(centre - params.eps, centre + params.eps));
    inst.demands.push_back(small);
  }
  return inst;
}

std::vector<std::size_t> count_support_cuts(const LowerBoundParams& params, const Division& div) {
  params.validate();
  std::vector<Rational> points{kZero};
  points.insert(points.end(), div.cuts.begin(), div.cuts.end());
  points.push_back(kOne);
  std::vector<std::size_t> counts;
  for (long i = 1; i < params.n; ++i) {
    const Rational centre(i, params.n);
    const Rational lo = centre - params.eps - params.delta;
    const Rational hi = centre + params.eps + params.delta;
    counts.push_back(static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [&](const Rational& p) { return lo <= p && p <= hi; })));
  }
  return counts;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  DISPROP_ASSERT(bound > 0, "empty range");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = engine_.max() - engine_.max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

Instance random_instance(std::size_t n, std::size_t max_segments, std::uint64_t seed) {
  if (n < 1) throw DomainError("random_instance needs n >= 1");
  if (max_segments < 1) throw DomainError("random_instance needs max_segments >= 1");
  Rng rng(seed);
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t segments = 1 + rng.below(max_segments);
    const std::uint64_t grid = segments + 1 + rng.below(4 * max_segments + 8);
    std::vector<std::uint64_t> slots(grid - 1);
    std::iota(slots.begin(), slots.end(), std::uint64_t{1});
    for (std::size_t k = 0; k + 1 < segments; ++k) {
      std::swap(slots[k], slots[k + rng.below(slots.size() - k)]);
    }
    std::vector<std::uint64_t> chosen(slots.begin(), slots.begin() + static_cast<long>(segments - 1));
    std::sort(chosen.begin(), chosen.end());
    std::vector<Rational> bps{kZero};
    for (std::uint64_t c : chosen) bps.emplace_back(static_cast<long>(c), static_cast<long>(grid));
    bps.push_back(kOne);

    std::vector<Rational> weights;
    bool any = false;
    for (std::size_t k = 0; k < segments; ++k) {
      weights.emplace_back(static_cast<long>(rng.below(10)));
      any = any || weights.back().sign() > 0;
    }
    if (!any) weights[rng.below(segments)] = Rational(1 + static_cast<long>(rng.below(9)));
    inst.measures.push_back(Measure::normalized(std::move(bps), std::move(weights)));
  }
  std::vector<long> parts;
  long total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(static_cast<long>(rng.below(20)));
    total += parts.back();
  }
  if (total == 0) {
    parts[0] = 1;
    total = 1;
  }
  for (long part : parts) inst.demands.emplace_back(part, total);
  return inst;
}

std::vector<Rational> oracle_grid(const Instance& inst, std::size_t refine, const std::vector<Rational>& extra) {
  if (refine < 1) throw DomainError("grid refinement must be >= 1");
  std::vector<Rational> levels;
  Rational prefix;
  for (const Rational& d : inst.demands) {
    levels.push_back(d);
    levels.push_back(kOne - d);
    prefix += d;
    if (prefix <= kOne) levels.push_back(prefix);
  }
  std::vector<Rational> pts{kZero, kOne};
  for (const Measure& m : inst.measures) {
    pts.insert(pts.end(), m.breakpoints().begin(), m.breakpoints().end());
    for (const Rational& l : levels) {
      if (l >= kZero && l <= kOne) pts.push_back(m.quantile(l));
    }
  }
  for (const Rational& e : extra) {
    if (e >= kZero && e <= kOne) pts.push_back(e);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<Rational> out;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Rational step = (pts[k + 1] - pts[k]) / Rational(static_cast<long>(refine));
    for (std::size_t r = 0; r < refine; ++r) {
      const Rational p = pts[k] + step * Rational(static_cast<long>(r));
      if (p > kZero) out.push_back(p);
    }
  }
  return out;
}

OracleResult oracle_min_cuts(const Instance& inst, const OracleOptions& options) {
  inst.validate(false);
  const std::size_t n = inst.size();
  const std::vector<Rational> grid = oracle_grid(inst, options.grid_refine, options.extra_points);
  const std::size_t g = grid.size();
  OracleResult result;
  result.grid_points = g;
  result.grid_refine = options.grid_refine;

  std::vector<Rational> bounds;
  std::vector<std::vector<Rational>> piece_mass(n);  // [agent][piece]
  std::vector<std::size_t> owners;
  std::vector<Rational> received(n);

  for (std::size_t k = 0; k <= options.max_cuts && k <= g; ++k) {
    // Owner sequences with no two equal neighbours: n (n-1)^k per cut tuple.
    BigInt level = binomial(g, k) * n;
    for (std::size_t j = 0; j < k; ++j) level *= static_cast<unsigned long>(n - 1);
    if (BigInt(static_cast<unsigned long>(result.evaluated)) + level >
        BigInt(static_cast<unsigned long>(options.budget))) {
      throw BudgetError("oracle level with " + std::to_string(k) + " cuts needs " + level.get_str() +
                        " evaluations; budget " + std::to_string(options.budget) + " (already used " +
                        std::to_string(result.evaluated) + ")");
    }

    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    bool more = true;
    while (more) {
      bounds.assign(1, kZero);
      for (std::size_t c : comb) bounds.push_back(grid[c]);
      bounds.push_back(kOne);
      for (std::size_t i = 0; i < n; ++i) {
        piece_mass[i].clear();
        for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
          piece_mass[i].push_back(inst.measures[i].interval_mass(bounds[j], bounds[j + 1]));
        }
      }

      // Depth-first over owner sequences in lexicographic order.
      owners.assign(k + 1, 0);
      std::fill(received.begin(), received.end(), kZero);
      bool found = false;
      auto dfs = [&](auto&& self, std::size_t piece) -> void {
        if (found) return;
        if (piece == k + 1) {
          ++result.evaluated;
          for (std::size_t i = 0; i < n; ++i) {
            if (received[i] < inst.demands[i]) return;
          }
          found = true;
          return;
        }
        for (std::size_t o = 0; o < n && !found; ++o) {
          if (piece > 0 && owners[piece - 1] == o) continue;
          owners[piece] = o;
          received[o] += piece_mass[o][piece];
          self(self, piece + 1);
          if (!found) received[o] -= piece_mass[o][piece];
        }
      };
      dfs(dfs, 0);
      if (found) {
        Division witness{{bounds.begin() + 1, bounds.end() - 1}, owners};
        DISPROP_ASSERT(verify(inst, witness).valid, "oracle witness failed exact verification");
        result.best_cuts = k;
        result.witness = std::move(witness);
        return result;
      }

      // Next k-combination of grid indices.
      more = false;
      for (std::size_t pos = k; pos-- > 0;) {
        if (comb[pos] < g - k + pos) {
          ++comb[pos];
          for (std::size_t r = pos + 1; r < k; ++r) comb[r] = comb[r - 1] + 1;
          more = true;
          break;
        }
      }
    }
  }
  return result;
}

}  // namespace disprop::instances
