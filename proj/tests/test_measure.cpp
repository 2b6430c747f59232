#include <doctest.h>

#include "disprop/errors.hpp"
#include "disprop/instances.hpp"
#include "disprop/measure.hpp"
#include "support.hpp"

using namespace disprop;
using namespace testing;

namespace {

// Mass of [a,b] by summing segment overlaps; shares no code with cdf().
Rational overlap_mass(const Measure& m, const Rational& a, const Rational& b) {
  Rational total;
  const auto& bp = m.breakpoints();
  for (std::size_t j = 0; j < m.segments(); ++j) {
    const Rational lo = max(bp[j], a);
    const Rational hi = min(bp[j + 1], b);
    if (lo < hi) total += m.densities()[j] * (hi - lo);
  }
  return total;
}

std::vector<Measure> sample_measures(std::size_t count) {
  std::vector<Measure> out;
  for (std::uint64_t seed = 1; out.size() < count; ++seed) {
    auto inst = instances::random_instance(3, 6, seed);
    out.insert(out.end(), inst.measures.begin(), inst.measures.end());
  }
  return out;
}

std::vector<Rational> probe_points(std::size_t q) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k <= q; ++k) out.emplace_back(static_cast<long>(k), static_cast<long>(q));
  return out;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(R("6/8").str() == "3/4");
  CHECK(R("-4/2").str() == "-2");
  CHECK(R("0/5").str() == "0");
  CHECK(R("12").is_integer());
  CHECK(R("7/3").floor() == 2);
  CHECK(R("-7/3").floor() == -3);
  CHECK(R("-7/3").ceil() == -2);
  CHECK(R("1/3") + R("1/6") == R("1/2"));
  CHECK(R("1/3") < R("1/2"));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(R("1") / Rational(0), std::domain_error);
}

TEST_CASE("huge denominators stay exact") {
  Rational eps(1, 300);
  Rational tiny(1);
  for (int k = 0; k < 100; ++k) tiny *= eps;
  CHECK((tiny + Rational(1)) - Rational(1) == tiny);
  CHECK(tiny.sign() > 0);
}

TEST_CASE("cdf") {
  const Measure u = Measure::uniform();
  CHECK(u.cdf(R("1/3")) == R("1/3"));
  CHECK(left_half().cdf(R("1/4")) == R("1/2"));
  CHECK(left_half().cdf(R("3/4")) == R("1"));
  CHECK(left_half().cdf(R("0")) == R("0"));
  CHECK(left_half().cdf(R("1")) == R("1"));
  CHECK_THROWS_AS(u.cdf(R("3/2")), DomainError);
  CHECK_THROWS_AS(u.cdf(R("-1/2")), DomainError);
}

TEST_CASE("quantile takes the least preimage") {
  CHECK(Measure::uniform().quantile(R("1/2")) == R("1/2"));
  const Measure gap = M({"0", "1/4", "3/4", "1"}, {"2", "0", "2"});
  CHECK(gap.quantile(R("1/2")) == R("1/4"));
  CHECK(gap.quantile(R("0")) == R("0"));
  CHECK(right_half().quantile(R("0")) == R("0"));
  CHECK(right_half().quantile(R("1/2")) == R("3/4"));
  CHECK(gap.quantile(R("1")) == R("1"));
  CHECK_THROWS_AS(gap.quantile(R("2")), DomainError);
}

TEST_CASE("interval_mass") {
  CHECK(Measure::uniform().interval_mass(R("1/4"), R("1/2")) == R("1/4"));
  CHECK(left_half().interval_mass(R("1/3"), R("1/3")) == R("0"));
  CHECK(right_half().interval_mass(R("0"), R("3/4")) == R("1/2"));
  CHECK_THROWS_AS(Measure::uniform().interval_mass(R("1/2"), R("1/4")), DomainError);
}

TEST_CASE("arc_mass") {
  CHECK(arc_mass(Measure::uniform(), {R("3/4"), R("1/2")}) == R("1/2"));
  CHECK(arc_mass(left_half(), {R("1/3"), R("1")}) == R("1"));
  CHECK(arc_mass(left_half(), {R("1/4"), R("1/2")}) == R("1/2"));
  CHECK(arc_mass(left_half(), {R("0"), R("0")}) == R("0"));
  CHECK_THROWS_AS(arc_mass(left_half(), {R("1"), R("0")}), DomainError);
}

TEST_CASE("crossings") {
  const Measure u = Measure::uniform();
  auto same = crossings(u, u, R("0"), R("1"));
  REQUIRE(same.intervals.size() == 1);
  CHECK(same.points.empty());
  CHECK(same.intervals[0] == std::pair{R("0"), R("1")});

  const Measure bump = M({"0", "1/2", "3/4", "1"}, {"0", "4", "0"});
  auto one = crossings(u, bump, R("1/2"), R("3/4"));
  CHECK(one.intervals.empty());
  CHECK(one.points == Rs({"2/3"}));

  auto end_only = crossings(u, left_half(), R("1/4"), R("1"));
  CHECK(end_only.intervals.empty());
  CHECK(end_only.points == Rs({"1"}));
}

TEST_CASE("construction validates and canonicalizes") {
  const Measure merged = M({"0", "1/3", "2/3", "1"}, {"1", "1", "1"});
  CHECK(merged == Measure::uniform());
  CHECK(merged.segments() == 1);

  auto field_of = [](auto&& f) {
    try {
      f();
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of([] { M({"0", "1/2", "1/2", "1"}, {"1", "1", "1"}); }) == "breakpoints[2]");
  CHECK(field_of([] { M({"1/8", "1"}, {"8/7"}); }) == "breakpoints[0]");
  CHECK(field_of([] { M({"0", "1"}, {"1/2"}); }) == "densities");
  CHECK(field_of([] { M({"0", "1/2", "1"}, {"3", "-1"}); }) == "densities[1]");
  CHECK(field_of([] { M({"0", "1"}, {"1", "1"}); }) == "densities");
}

TEST_CASE("restriction, reflection and rotation") {
  const Measure gap = M({"0", "1/4", "3/4", "1"}, {"2", "0", "2"});
  const Measure r = gap.restricted(R("1/8"), R("7/8"));
  // Mass 1/2 on [1/8,7/8]: halves at both ends, scaled by 3/4 / (1/2).
  CHECK(r.cdf(R("1/6")) == R("1/2"));
  CHECK(r == M({"0", "1/6", "5/6", "1"}, {"3", "0", "3"}));
  CHECK_THROWS_AS(gap.restricted(R("1/4"), R("3/4")), DomainError);

  CHECK(left_half().reflected() == right_half());
  CHECK(Measure::uniform().rotated(R("3/7")) == Measure::uniform());
  CHECK(left_half().rotated(R("1/2")) == right_half());
  CHECK(left_half().rotated(R("5/4")) == M({"0", "1/4", "3/4", "1"}, {"0", "2", "0"}));
}

TEST_CASE("property: cdf is monotone and quantile inverts it") {
  const auto ms = sample_measures(40);
  const auto pts = probe_points(48);
  for (const Measure& m : ms) {
    Rational prev(-1);
    for (const Rational& t : pts) {
      const Rational c = m.cdf(t);
      CHECK(c >= prev);
      prev = c;
      CHECK(c == overlap_mass(m, Rational(0), t));
      CHECK(m.quantile(c) <= t);
      CHECK(m.cdf(m.quantile(t)) == t);
    }
  }
}

TEST_CASE("property: quantile blocks carry exactly 1/q") {
  for (const Measure& m : sample_measures(20)) {
    for (long q : {1L, 2L, 3L, 7L, 12L}) {
      for (long j = 0; j < q; ++j) {
        CHECK(m.interval_mass(m.quantile(Rational(j, q)), m.quantile(Rational(j + 1, q))) == Rational(1, q));
      }
    }
  }
}

TEST_CASE("property: arc and complement add to one") {
  const auto pts = probe_points(12);
  for (const Measure& m : sample_measures(15)) {
    for (const Rational& s : pts) {
      if (s == Rational(1)) continue;
      for (const Rational& len : pts) {
        const CircleArc arc{s, len};
        CHECK(arc_mass(m, arc) + arc_mass(m, arc.complement()) == Rational(1));
        const Rational end = s + len;
        const Rational direct = end <= Rational(1)
                                    ? overlap_mass(m, s, end)
                                    : overlap_mass(m, s, Rational(1)) + overlap_mass(m, Rational(0), end - Rational(1));
        CHECK(arc_mass(m, arc) == direct);
      }
    }
  }
}

TEST_CASE("property: crossings are exactly the zero set") {
  const auto ms = sample_measures(16);
  const auto pts = probe_points(240);
  for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
    const Measure& a = ms[i];
    const Measure& b = ms[i + 1];
    const auto zs = crossings(a, b, Rational(0), Rational(1));
    for (const Rational& p : zs.points) CHECK(a.cdf(p) == b.cdf(p));
    for (const auto& [lo, hi] : zs.intervals) {
      CHECK(lo < hi);
      CHECK(a.cdf(lo) == b.cdf(lo));
      CHECK(a.cdf(hi) == b.cdf(hi));
      CHECK(a.cdf((lo + hi) / Rational(2)) == b.cdf((lo + hi) / Rational(2)));
    }
    // Off the returned set the difference is nonzero, on a grid fine enough to
    // land between the elements.
    for (const Rational& t : pts) CHECK((a.cdf(t) == b.cdf(t)) == zs.contains(t));
  }
}
