#include "disprop/conjecture.hpp"

#include <algorithm>
#include <chrono>

#include "disprop/errors.hpp"
#include "disprop/instances.hpp"

namespace disprop::conjecture {

namespace {

const Rational kZero(0);
const Rational kOne(1);

// ca * a + cb * b + c0
struct Affine {
  Rational ca;
  Rational cb;
  Rational c0;

  Rational at(const Rational& a, const Rational& b) const { return ca * a + cb * b + c0; }
  bool constant() const { return ca.is_zero() && cb.is_zero(); }
  Affine operator-(const Rational& v) const { return Affine{ca, cb, c0 - v}; }
  Affine negated() const { return Affine{-ca, -cb, -c0}; }
};

enum class Shape { Rect, RectWrap, TriLow, TriWrap };

// A convex cell of the (a, b) square on which every arc mass is affine.
struct Cell {
  Rational a0, a1, b0, b1;
  Shape shape;
  std::vector<Affine> mass;  // per agent

  bool wraps() const { return shape == Shape::RectWrap || shape == Shape::TriWrap; }

  // Constraints of the form form >= 0.
  std::vector<Affine> bounds() const {
    std::vector<Affine> out{{kOne, kZero, -a0}, {-kOne, kZero, a1}, {kZero, kOne, -b0}, {kZero, -kOne, b1}};
    if (shape == Shape::TriLow) out.push_back({-kOne, kOne, kZero});  // b >= a
    if (shape == Shape::TriWrap) out.push_back({kOne, -kOne, kZero});  // a >= b
    return out;
  }
};

std::vector<Rational> search_grid(const Instance& inst, std::size_t refine) {
  std::vector<Rational> pts;
  for (const Measure& m : inst.measures) pts.insert(pts.end(), m.breakpoints().begin(), m.breakpoints().end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Rational> out;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Rational step = (pts[k + 1] - pts[k]) / Rational(static_cast<long>(refine));
    for (std::size_t r = 0; r < refine; ++r) out.push_back(pts[k] + step * Rational(static_cast<long>(r)));
  }
  out.push_back(kOne);
  return out;
}

// F(theta) on [lo, hi] written as slope * theta + offset.
std::pair<Rational, Rational> cdf_line(const Measure& m, const Rational& lo, const Rational& hi) {
  const Rational f0 = m.cdf(lo);
  const Rational slope = (m.cdf(hi) - f0) / (hi - lo);
  return {slope, f0 - slope * lo};
}

std::vector<Cell> build_cells(const Instance& inst, const std::vector<Rational>& grid) {
  std::vector<Cell> cells;
  const std::size_t g = grid.size() - 1;
  for (std::size_t ka = 0; ka < g; ++ka) {
    for (std::size_t kb = 0; kb < g; ++kb) {
      std::vector<Shape> shapes;
      if (ka < kb) shapes = {Shape::Rect};
      else if (ka > kb) shapes = {Shape::RectWrap};
      else shapes = {Shape::TriLow, Shape::TriWrap};
      for (Shape shape : shapes) {
        Cell cell{grid[ka], grid[ka + 1], grid[kb], grid[kb + 1], shape, {}};
        for (const Measure& m : inst.measures) {
          const auto [sa, oa] = cdf_line(m, cell.a0, cell.a1);
          const auto [sb, ob] = cdf_line(m, cell.b0, cell.b1);
          // F(b) - F(a), plus 1 when the arc wraps through 0.
          cell.mass.push_back(Affine{-sa, sb, ob - oa + (cell.wraps() ? kOne : kZero)});
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

// Nonempty proper subsets of [n], by size then lexicographically.
std::vector<std::vector<std::size_t>> subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 1; size < n; ++size) {
    std::vector<std::size_t> comb(size);
    for (std::size_t k = 0; k < size; ++k) comb[k] = k;
    while (true) {
      out.push_back(comb);
      std::size_t pos = size;
      while (pos > 0 && comb[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++comb[pos - 1];
      for (std::size_t r = pos; r < size; ++r) comb[r] = comb[r - 1] + 1;
    }
  }
  return out;
}

struct Point {
  Rational a;
  Rational b;
};

bool lex_less(const Point& l, const Point& r) { return l.a < r.a || (l.a == r.a && l.b < r.b); }

std::optional<Point> intersect(const Affine& l1, const Affine& l2) {
  const Rational det = l1.ca * l2.cb - l1.cb * l2.ca;
  if (det.is_zero()) return std::nullopt;
  return Point{(l1.cb * l2.c0 - l1.c0 * l2.cb) / det, (l1.c0 * l2.ca - l1.ca * l2.c0) / det};
}

// Lexicographically least point with every ineq >= 0 and every eq == 0.
// The feasible set lies inside a bounded cell, so if it is nonempty it has a
// vertex, and the least point is one.
std::optional<Point> lexmin_feasible(const std::vector<Affine>& ineqs, const std::vector<Affine>& eqs) {
  auto feasible = [&](const Point& p) {
    for (const Affine& e : eqs) {
      if (!e.at(p.a, p.b).is_zero()) return false;
    }
    for (const Affine& c : ineqs) {
      if (c.at(p.a, p.b).sign() < 0) return false;
    }
    return true;
  };
  // Equalities first: a unique solution settles it.
  std::vector<Affine> lines;
  for (const Affine& e : eqs) {
    if (e.constant()) {
      if (!e.c0.is_zero()) return std::nullopt;
      continue;
    }
    lines.push_back(e);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (auto p = intersect(lines[i], lines[j])) return feasible(*p) ? p : std::nullopt;
    }
  }
  for (const Affine& c : ineqs) {
    if (c.constant()) {
      if (c.c0.sign() < 0) return std::nullopt;
      continue;
    }
    lines.push_back(c);
  }
  std::optional<Point> best;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto p = intersect(lines[i], lines[j]);
      if (p && feasible(*p) && (!best || lex_less(*p, *best))) best = p;
    }
  }
  return best;
}

Rational sum_of(const Instance& inst, const std::vector<std::size_t>& set) {
  Rational s;
  for (std::size_t i : set) s += inst.demands[i];
  return s;
}

CircleArc arc_between(const Rational& a, const Rational& b, bool wraps) {
  const Rational length = wraps ? kOne - a + b : b - a;
  return CircleArc{a == kOne ? kZero : a, length};
}

// Minimum of arc masses over a set, and the first index attaining it.
std::pair<Rational, std::size_t> min_mass(const Instance& inst, const std::vector<std::size_t>& set,
                                          const CircleArc& arc) {
  std::optional<Rational> best;
  std::size_t at = set.front();
  for (std::size_t i : set) {
    const Rational m = arc_mass(inst.measures[i], arc);
    if (!best || m < *best) {
      best = m;
      at = i;
    }
  }
  return {*best, at};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Found: return "witness";
    case Outcome::CertifiedNone: return "certified_none";
    case Outcome::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

SearchResult search_witness(const Instance& inst, const SearchOptions& options) {
  inst.validate(false);
  if (inst.size() < 2) throw PreconditionError("the partition search needs at least two agents");
  if (inst.demand_sum() != kOne) throw PreconditionError("the partition search needs demands summing to 1");
  if (options.refine < 1) throw DomainError("refine must be >= 1");
  const std::size_t n = inst.size();

  const auto grid = search_grid(inst, options.refine);
  const auto cells = build_cells(inst, grid);
  const auto ps = subsets(n);

  SearchResult result;
  result.grid_points = grid.size();
  for (const auto& p : ps) {
    result.planned += static_cast<std::uint64_t>(p.size() * (n - p.size()) * cells.size());
  }

  for (const auto& p : ps) {
    std::vector<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::binary_search(p.begin(), p.end(), i)) q.push_back(i);
    }
    const Rational target = sum_of(inst, p);
    for (const Cell& cell : cells) {
      std::vector<Affine> ineqs = cell.bounds();
      for (std::size_t i : p) ineqs.push_back(cell.mass[i] - target);
      for (std::size_t j : q) ineqs.push_back((cell.mass[j] - target).negated());
      for (std::size_t i : p) {
        for (std::size_t j : q) {
          if (options.budget != 0 && result.evaluated >= options.budget) {
            result.outcome = Outcome::BudgetExhausted;
            return result;
          }
          ++result.evaluated;
          const auto point = lexmin_feasible(ineqs, {cell.mass[i] - target, cell.mass[j] - target});
          if (!point) continue;

          Witness w;
          w.p = p;
          w.q = q;
          w.arc = arc_between(point->a, point->b, cell.wraps());
          const auto [min_p, at_p] = min_mass(inst, p, w.arc);
          const auto [min_q, at_q] = min_mass(inst, q, w.arc.complement());
          w.attain_p = at_p;
          w.attain_q = at_q;
          w.residual_p = min_p - target;
          w.residual_q = min_q - sum_of(inst, q);
          w.degenerate = w.arc.length.is_zero() || w.arc.length == kOne;
          DISPROP_ASSERT(w.residual_p.is_zero() && w.residual_q.is_zero(), "witness residuals are not zero");
          result.outcome = Outcome::Found;
          result.witness = std::move(w);
          return result;
        }
      }
    }
  }
  result.outcome = Outcome::CertifiedNone;
  return result;
}

bool check_witness(const Instance& inst, const Witness& w) {
  const std::size_t n = inst.size();
  if (w.p.empty() || w.q.empty()) return false;
  std::vector<std::size_t> all = w.p;
  all.insert(all.end(), w.q.begin(), w.q.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] != i) return false;
  }
  if (all.size() != n) return false;
  try {
    w.arc.validate();
  } catch (const DomainError&) {
    return false;
  }
  Rational sum_p;
  for (std::size_t i : w.p) sum_p += inst.demands[i];
  Rational sum_q;
  for (std::size_t j : w.q) sum_q += inst.demands[j];
  const CircleArc comp = w.arc.complement();
  Rational min_p = arc_mass(inst.measures[w.p.front()], w.arc);
  for (std::size_t i : w.p) min_p = min(min_p, arc_mass(inst.measures[i], w.arc));
  Rational min_q = arc_mass(inst.measures[w.q.front()], comp);
  for (std::size_t j : w.q) min_q = min(min_q, arc_mass(inst.measures[j], comp));
  return min_p == sum_p && min_q == sum_q;
}

Instance rotated(const Instance& inst, const Rational& offset) {
  Instance out;
  out.demands = inst.demands;
  for (const Measure& m : inst.measures) out.measures.push_back(m.rotated(offset));
  return out;
}

Witness rotated(const Witness& witness, const Rational& offset) {
  Witness out = witness;
  Rational start = witness.arc.start + offset;
  start -= Rational(start.floor());
  out.arc.start = start;
  return out;
}

std::uint64_t campaign_instance_seed(std::uint64_t campaign_seed, std::size_t k) {
  return splitmix64(campaign_seed ^ splitmix64(static_cast<std::uint64_t>(k)));
}

std::vector<CampaignRecord> stress_campaign(const CampaignOptions& options) {
  if (options.n < 2) throw PreconditionError("campaign needs n >= 2");
  std::vector<CampaignRecord> records;
  for (std::size_t k = 0; k < options.count; ++k) {
    CampaignRecord rec;
    rec.index = k;
    rec.seed = campaign_instance_seed(options.seed, k);
    rec.instance = instances::random_instance(options.n, options.max_segments, rec.seed);
    const auto begin = std::chrono::steady_clock::now();
    rec.result = search_witness(rec.instance, SearchOptions{1, options.budget});
    if (options.timing) {
      rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace disprop::conjecture
