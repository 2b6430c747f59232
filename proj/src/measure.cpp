#include "disprop/measure.hpp"

#include <algorithm>

#include "disprop/errors.hpp"

namespace disprop {

namespace {

const Rational kZero(0);
const Rational kOne(1);

void require_unit(const Rational& v, const char* what) {
  if (v < kZero || v > kOne) throw DomainError(std::string(what) + " " + v.str() + " outside [0,1]");
}

Rational wrap_unit(const Rational& v) {
  Rational r = v - Rational(v.floor());
  return r;
}

// Zero set of the continuous piecewise-linear interpolant of (knots, values).
EqualitySet zero_set(const std::vector<Rational>& knots, const std::vector<Rational>& values) {
  EqualitySet out;
  auto add_point = [&](const Rational& p) {
    if (!out.intervals.empty() && out.intervals.back().second >= p) return;
    if (!out.points.empty() && out.points.back() == p) return;
    out.points.push_back(p);
  };
  auto add_interval = [&](const Rational& u, const Rational& v) {
    while (!out.points.empty() && out.points.back() >= u) out.points.pop_back();
    if (!out.intervals.empty() && out.intervals.back().second >= u) {
      out.intervals.back().second = v;
    } else {
      out.intervals.emplace_back(u, v);
    }
  };
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const Rational& d0 = values[k];
    const Rational& d1 = values[k + 1];
    if (d0.is_zero() && d1.is_zero()) {
      add_interval(knots[k], knots[k + 1]);
      continue;
    }
    if (d0.is_zero()) add_point(knots[k]);
    if (d0.sign() * d1.sign() < 0) {
      add_point(knots[k] + d0 * (knots[k + 1] - knots[k]) / (d0 - d1));
    }
  }
  if (!knots.empty() && values.back().is_zero()) add_point(knots.back());
  return out;
}

std::vector<Rational> knots_between(const std::vector<Rational>& a_pts, const std::vector<Rational>& b_pts,
                                    const Rational& a, const Rational& b) {
  std::vector<Rational> knots{a, b};
  for (const auto* pts : {&a_pts, &b_pts}) {
    for (const Rational& p : *pts) {
      if (p > a && p < b) knots.push_back(p);
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

}  // namespace

Measure::Measure(std::vector<Rational> breakpoints, std::vector<Rational> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
  canonicalize();
}

Measure Measure::uniform() { return Measure({kZero, kOne}, {kOne}); }

Measure Measure::uniform_on(const Rational& a, const Rational& b) {
  if (!(kZero <= a && a < b && b <= kOne)) throw DomainError("uniform_on requires 0 <= a < b <= 1");
  std::vector<Rational> bps{kZero};
  std::vector<Rational> dens;
  if (a > kZero) {
    bps.push_back(a);
    dens.push_back(kZero);
  }
  bps.push_back(b);
  dens.push_back(kOne / (b - a));
  if (b < kOne) {
    bps.push_back(kOne);
    dens.push_back(kZero);
  }
  return Measure(std::move(bps), std::move(dens));
}

Measure Measure::normalized(std::vector<Rational> breakpoints, std::vector<Rational> weights) {
  if (breakpoints.size() != weights.size() + 1) {
    throw ValidationError("densities", "expected one density per segment");
  }
  Rational total;
  for (std::size_t j = 0; j < weights.size(); ++j) total += weights[j] * (breakpoints[j + 1] - breakpoints[j]);
  if (total.sign() <= 0) throw ValidationError("densities", "total weight must be positive");
  for (Rational& w : weights) w /= total;
  return Measure(std::move(breakpoints), std::move(weights));
}

void Measure::canonicalize() {
  if (breakpoints_.size() < 2) throw ValidationError("breakpoints", "need at least two breakpoints");
  if (densities_.size() + 1 != breakpoints_.size()) {
    throw ValidationError("densities", "expected " + std::to_string(breakpoints_.size() - 1) +
                                           " densities, got " + std::to_string(densities_.size()));
  }
  if (breakpoints_.front() != kZero) throw ValidationError("breakpoints[0]", "must be 0");
  if (breakpoints_.back() != kOne) {
    throw ValidationError("breakpoints[" + std::to_string(breakpoints_.size() - 1) + "]", "must be 1");
  }
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j) {
    if (breakpoints_[j] >= breakpoints_[j + 1]) {
      throw ValidationError("breakpoints[" + std::to_string(j + 1) + "]", "breakpoints must be strictly increasing");
    }
  }
  for (std::size_t j = 0; j < densities_.size(); ++j) {
    if (densities_[j].sign() < 0) throw ValidationError("densities[" + std::to_string(j) + "]", "negative density");
  }

  std::vector<Rational> bps{breakpoints_.front()};
  std::vector<Rational> dens;
  for (std::size_t j = 0; j < densities_.size(); ++j) {
    if (!dens.empty() && dens.back() == densities_[j]) {
      bps.back() = breakpoints_[j + 1];
    } else {
      dens.push_back(densities_[j]);
      bps.push_back(breakpoints_[j + 1]);
    }
  }
  breakpoints_ = std::move(bps);
  densities_ = std::move(dens);

  cumulative_.assign(1, kZero);
  for (std::size_t j = 0; j < densities_.size(); ++j) {
    cumulative_.push_back(cumulative_.back() + densities_[j] * (breakpoints_[j + 1] - breakpoints_[j]));
  }
  if (cumulative_.back() != kOne) {
    throw ValidationError("densities", "total mass is " + cumulative_.back().str() + ", expected 1");
  }
}

std::size_t Measure::segment_of(const Rational& theta) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), theta);
  std::size_t j = static_cast<std::size_t>(it - breakpoints_.begin());
  j = j == 0 ? 0 : j - 1;
  return std::min(j, densities_.size() - 1);
}

Rational Measure::cdf(const Rational& theta) const {
  require_unit(theta, "cdf argument");
  const std::size_t j = segment_of(theta);
  return cumulative_[j] + densities_[j] * (theta - breakpoints_[j]);
}

Rational Measure::quantile(const Rational& p) const {
  require_unit(p, "quantile level");
  if (p.is_zero()) return kZero;
  // First segment whose right end reaches p; it starts strictly below p, so its density is positive.
  auto it = std::lower_bound(cumulative_.begin() + 1, cumulative_.end(), p);
  const std::size_t j = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  DISPROP_ASSERT(densities_[j].sign() > 0, "quantile landed on a plateau");
  return breakpoints_[j] + (p - cumulative_[j]) / densities_[j];
}

Rational Measure::interval_mass(const Rational& a, const Rational& b) const {
  if (a > b) throw DomainError("interval_mass requires a <= b, got (" + a.str() + ", " + b.str() + ")");
  return cdf(b) - cdf(a);
}

Measure Measure::restricted(const Rational& a, const Rational& b) const {
  if (!(a < b)) throw DomainError("restriction to an empty interval");
  const Rational mass = interval_mass(a, b);
  if (mass.is_zero()) throw DomainError("restriction to an interval of zero mass");
  const Rational width = b - a;
  Measure out;
  out.breakpoints_.push_back(kZero);
  const std::size_t first = segment_of(a);
  for (std::size_t j = first; j < densities_.size() && breakpoints_[j] < b; ++j) {
    const Rational right = min(breakpoints_[j + 1], b);
    if (right <= a) continue;
    out.densities_.push_back(densities_[j] * width / mass);
    out.breakpoints_.push_back((right - a) / width);
  }
  out.canonicalize();
  return out;
}

Measure Measure::reflected() const {
  Measure out;
  for (auto it = breakpoints_.rbegin(); it != breakpoints_.rend(); ++it) out.breakpoints_.push_back(kOne - *it);
  out.densities_.assign(densities_.rbegin(), densities_.rend());
  out.canonicalize();
  return out;
}

Measure Measure::rotated(const Rational& offset) const {
  const Rational shift = wrap_unit(offset);
  std::vector<Rational> bps{kZero, kOne, shift};
  for (const Rational& b : breakpoints_) bps.push_back(wrap_unit(b + shift));
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  Measure out;
  out.breakpoints_ = bps;
  for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
    const Rational mid = (bps[j] + bps[j + 1]) / Rational(2);
    out.densities_.push_back(densities_[segment_of(wrap_unit(mid - shift))]);
  }
  out.canonicalize();
  return out;
}

CircleArc CircleArc::complement() const {
  Rational end = start + length;
  if (end >= kOne) end -= kOne;
  return CircleArc{end, kOne - length};
}

void CircleArc::validate() const {
  if (start < kZero || start >= kOne) throw DomainError("arc start " + start.str() + " outside [0,1)");
  if (length < kZero || length > kOne) throw DomainError("arc length " + length.str() + " outside [0,1]");
}

Rational arc_mass(const Measure& m, const CircleArc& arc) {
  arc.validate();
  const Rational end = arc.start + arc.length;
  if (end <= kOne) return m.interval_mass(arc.start, end);
  return m.interval_mass(arc.start, kOne) + m.interval_mass(kZero, end - kOne);
}

bool EqualitySet::contains(const Rational& theta) const {
  if (std::binary_search(points.begin(), points.end(), theta)) return true;
  return std::any_of(intervals.begin(), intervals.end(),
                     [&](const auto& iv) { return iv.first <= theta && theta <= iv.second; });
}

Rational EqualitySet::min() const {
  DISPROP_ASSERT(!empty(), "min of empty equality set");
  if (points.empty()) return intervals.front().first;
  if (intervals.empty()) return points.front();
  return disprop::min(points.front(), intervals.front().first);
}

Rational EqualitySet::max() const {
  DISPROP_ASSERT(!empty(), "max of empty equality set");
  if (points.empty()) return intervals.back().second;
  if (intervals.empty()) return points.back();
  return disprop::max(points.back(), intervals.back().second);
}

EqualitySet crossings(const Measure& m1, const Measure& m2, const Rational& a, const Rational& b) {
  require_unit(a, "crossings bound");
  require_unit(b, "crossings bound");
  if (a > b) throw DomainError("crossings requires a <= b");
  const auto knots = knots_between(m1.breakpoints(), m2.breakpoints(), a, b);
  std::vector<Rational> values;
  values.reserve(knots.size());
  for (const Rational& k : knots) values.push_back(m1.cdf(k) - m2.cdf(k));
  return zero_set(knots, values);
}

EqualitySet level_set(const Measure& m, const Rational& level, const Rational& a, const Rational& b) {
  require_unit(a, "level_set bound");
  require_unit(b, "level_set bound");
  if (a > b) throw DomainError("level_set requires a <= b");
  const auto knots = knots_between(m.breakpoints(), {}, a, b);
  std::vector<Rational> values;
  values.reserve(knots.size());
  for (const Rational& k : knots) values.push_back(m.cdf(k) - level);
  return zero_set(knots, values);
}

}  // namespace disprop
