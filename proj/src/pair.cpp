#include "disprop/pair.hpp"

#include <algorithm>
#include <optional>

#include "disprop/errors.hpp"

namespace disprop::pair {

namespace {

const Rational kZero(0);
const Rational kOne(1);

// m_ge-mass of the arc starting at the m_eq-quantile of u and spanning m_eq-mass
// alpha. Valid for u in (0,1) with u + alpha != 1.
Rational mass_at(const Measure& m_eq, const Measure& m_ge, const Rational& alpha, const Rational& u) {
  const Rational start = m_eq.quantile(u);
  const Rational v = u + alpha;
  if (v < kOne) return m_ge.cdf(m_eq.quantile(v)) - m_ge.cdf(start);
  return kOne - m_ge.cdf(start) + m_ge.cdf(m_eq.quantile(v - kOne));
}

// Levels in (0,1) at which the candidate-mass function may bend or jump.
std::vector<Rational> piece_boundaries(const Measure& m_eq, const Measure& m_ge, const Rational& alpha) {
  std::vector<Rational> levels;
  for (const Rational& b : m_eq.breakpoints()) levels.push_back(m_eq.cdf(b));
  for (const Rational& b : m_ge.breakpoints()) levels.push_back(m_eq.cdf(b));
  std::vector<Rational> out{kZero, kOne, kOne - alpha};
  for (const Rational& l : levels) {
    for (const Rational& u : {l, l - alpha, l - alpha + kOne}) {
      if (u > kZero && u < kOne) out.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct LinearPiece {
  BigInt lo;  // first lattice index
  BigInt hi;  // last lattice index, inclusive
  Rational intercept;
  Rational slope;  // in units of j/q
};

}  // namespace

CircleArc candidate_arc(const Measure& m_eq, const Rational& alpha, const BigInt& j) {
  const BigInt p = alpha.numerator();
  const BigInt q = alpha.denominator();
  if (j < 0 || j >= q) throw DomainError("candidate index " + j.get_str() + " outside [0, " + q.get_str() + ")");
  const Rational start = m_eq.quantile(Rational(j, q));
  const BigInt k = j + p;
  if (k <= q) {
    const Rational end = k == q ? kOne : m_eq.quantile(Rational(k, q));
    return CircleArc{start, end - start};
  }
  const Rational end = m_eq.quantile(Rational(BigInt(k - q), q));
  return CircleArc{start, kOne - start + end};
}

CircleLemmaResult circle_lemma(const Measure& m_eq, const Measure& m_ge, const Rational& alpha,
                               std::size_t list_limit) {
  if (alpha < kZero || alpha > kOne) throw DomainError("alpha " + alpha.str() + " outside [0,1]");
  CircleLemmaResult result;
  PigeonholeCertificate& cert = result.certificate;
  cert.p = alpha.numerator();
  cert.q = alpha.denominator();
  cert.chosen = 0;
  if (alpha.is_zero() || alpha == kOne) {
    result.arc = CircleArc{kZero, alpha};
    cert.candidate_sum = alpha;
    cert.candidate_masses.push_back(alpha);
    return result;
  }
  const BigInt& q = cert.q;
  const Rational q_r(q);
  const BigInt special = q - cert.p;  // the candidate whose arc ends exactly at 1

  auto direct = [&](const BigInt& j) { return arc_mass(m_ge, candidate_arc(m_eq, alpha, j)); };

  const auto bounds = piece_boundaries(m_eq, m_ge, alpha);
  std::vector<LinearPiece> pieces;
  for (std::size_t a = 0; a + 1 < bounds.size(); ++a) {
    const Rational& left = bounds[a];
    const Rational& right = bounds[a + 1];
    LinearPiece piece;
    piece.lo = (left * q_r).floor() + 1;
    const bool open_right = right == kOne || right == kOne - alpha;
    piece.hi = open_right ? BigInt((right * q_r).ceil() - 1) : (right * q_r).floor();
    if (piece.lo < 1) piece.lo = 1;
    if (piece.hi > q - 1) piece.hi = q - 1;
    if (piece.lo > piece.hi) continue;
    const Rational third = (right - left) / Rational(3);
    const Rational u1 = left + third;
    const Rational u2 = u1 + third;
    const Rational f1 = mass_at(m_eq, m_ge, alpha, u1);
    const Rational f2 = mass_at(m_eq, m_ge, alpha, u2);
    piece.slope = (f2 - f1) / third;
    piece.intercept = f1 - piece.slope * u1;
    pieces.push_back(std::move(piece));
  }

  // Certificate: total candidate mass, summed in closed form per piece.
  const Rational mass0 = direct(0);
  const Rational mass_special = direct(special);
  Rational total = mass0 + mass_special;
  for (const LinearPiece& piece : pieces) {
    const Rational count(BigInt(piece.hi - piece.lo + 1));
    const Rational index_sum = count * Rational(BigInt(piece.lo + piece.hi)) / Rational(2);
    total += count * piece.intercept + piece.slope * index_sum / q_r;
  }
  cert.candidate_sum = total;
  DISPROP_ASSERT(total == Rational(cert.p), "pigeonhole cover does not sum to p");

  std::optional<BigInt> chosen;
  if (mass0 >= alpha) chosen = BigInt(0);
  for (const LinearPiece& piece : pieces) {
    if (chosen) break;
    auto value = [&](const BigInt& j) { return piece.intercept + piece.slope * Rational(j, q); };
    if (piece.slope.sign() > 0) {
      BigInt j = ((alpha - piece.intercept) * q_r / piece.slope).ceil();
      if (j < piece.lo) j = piece.lo;
      if (j <= piece.hi) chosen = j;
    } else if (value(piece.lo) >= alpha) {
      chosen = piece.lo;
    }
  }
  if (mass_special >= alpha && (!chosen || special < *chosen)) chosen = special;
  DISPROP_ASSERT(chosen.has_value(), "pigeonhole found no qualifying arc");

  cert.chosen = *chosen;
  result.arc = candidate_arc(m_eq, alpha, cert.chosen);
  DISPROP_ASSERT(arc_mass(m_eq, result.arc) == alpha, "chosen arc misses the equality");
  DISPROP_ASSERT(arc_mass(m_ge, result.arc) >= alpha, "chosen arc misses the inequality");

  if (q <= BigInt(static_cast<unsigned long>(list_limit))) {
    for (BigInt j = 0; j < q; ++j) cert.candidate_masses.push_back(direct(j));
  }
  return result;
}

PairResult solve_pair_explained(const Instance& inst, std::size_t list_limit) {
  if (inst.size() != 2) {
    throw PreconditionError("solve_pair needs exactly two agents, got " + std::to_string(inst.size()));
  }
  inst.validate(false);
  PairResult out;
  out.lemma = circle_lemma(inst.measures[1], inst.measures[0], kOne - inst.demands[1], list_limit);
  const CircleArc& x = out.lemma.arc;
  DivisionBuilder builder;
  if (!x.wraps()) {
    builder.append(x.start, 1);
    builder.append(x.start + x.length, 0);
    builder.append(kOne, 1);
  } else {
    const Rational end = x.start + x.length - kOne;
    builder.append(end, 0);
    builder.append(x.start, 1);
    builder.append(kOne, 0);
  }
  out.division = builder.finish();
  return out;
}

}  // namespace disprop::pair
