#include <doctest.h>

#include <fstream>
#include <sstream>

#include "disprop/baseline.hpp"
#include "disprop/errors.hpp"
#include "disprop/instances.hpp"
#include "disprop/json_io.hpp"
#include "disprop/solver.hpp"
#include "support.hpp"

using namespace disprop;
using namespace testing;
using instances::LowerBoundParams;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_two_per_support(const LowerBoundParams& params, const Division& d) {
  for (std::size_t c : instances::count_support_cuts(params, d)) CHECK(c >= 2);
}

}  // namespace

TEST_CASE("lower-bound instance for n = 2") {
  const LowerBoundParams p{2, R("1/100"), R("1/1000000")};
  const Instance inst = instances::lower_bound_instance(p);
  CHECK_NOTHROW(inst.validate(true));
  CHECK(inst.measures[0] == Measure::uniform());
  CHECK(inst.measures[1] == M({"0", "49/100", "51/100", "1"}, {"0", "50", "0"}));
  CHECK(inst.demands == Rs({"999999/1000000", "1/1000000"}));
}

TEST_CASE("lower-bound instance for n = 3") {
  const Rational eps = R("1/1000");
  const Instance inst = instances::lower_bound_instance({3, eps, eps * eps});
  REQUIRE(inst.size() == 3);
  CHECK(inst.measures[1].interval_mass(R("1/3") - eps, R("1/3") + eps) == R("1"));
  CHECK(inst.measures[2].interval_mass(R("2/3") - eps, R("2/3") + eps) == R("1"));
  CHECK(R("1/3") + eps < R("2/3") - eps);
  CHECK(inst.demand_sum() == R("1"));
}

TEST_CASE("original-scale parameters are exact") {
  for (long n : {2L, 3L, 4L}) {
    const auto p = LowerBoundParams::original(n);
    const Instance inst = instances::lower_bound_instance(p);
    CHECK_NOTHROW(inst.validate(true));
    CHECK(p.eps.denominator() == BigInt(100 * n) * BigInt(100 * n) * BigInt(100 * n) * BigInt(100 * n) *
                                     BigInt(100 * n) * BigInt(100 * n) * BigInt(100 * n) * BigInt(100 * n) *
                                     BigInt(100 * n) * BigInt(100 * n));
    const auto result = solver::solve(inst);
    CHECK(verify(inst, result.division).valid);
    require_two_per_support(p, result.division);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(instances::lower_bound_instance({2, R("1/4"), R("1/100")}), DomainError);
  CHECK_THROWS_AS(instances::lower_bound_instance({3, R("1/100"), R("1/100")}), DomainError);
  CHECK_THROWS_AS(instances::lower_bound_instance({1, R("1/100"), R("1/1000")}), DomainError);
  CHECK_THROWS_AS(instances::lower_bound_instance({2, R("0"), R("0")}), DomainError);
}

TEST_CASE("count_support_cuts") {
  const LowerBoundParams p{2, R("1/100"), R("1/1000000")};
  // Invalid single cut: the checker counts but certifies nothing.
  CHECK(instances::count_support_cuts(p, Division{Rs({"1/2"}), {0, 1}}) == std::vector<std::size_t>{1});
  CHECK(instances::count_support_cuts(p, Division{Rs({"1/2", "51/100"}), {0, 1, 0}}) ==
        std::vector<std::size_t>{2});
}

TEST_CASE("property: valid divisions cut every tiny support twice") {
  for (long n = 2; n <= 6; ++n) {
    const auto p = LowerBoundParams::desk(n);
    const Instance inst = instances::lower_bound_instance(p);
    const auto solved = solver::solve(inst);
    REQUIRE(verify(inst, solved.division).valid);
    require_two_per_support(p, solved.division);
    CHECK(solved.division.cut_count() >= static_cast<std::size_t>(2 * n - 2));
    CHECK(static_cast<long>(solved.division.cut_count()) <= cut_count_bound(n));
    if (n <= 3) {
      const Division knife = baseline::common_denominator(inst);
      REQUIRE(verify(inst, knife).valid);
      require_two_per_support(p, knife);
    }
  }
}

TEST_CASE("solver on the n = 3 desk instance uses 4 or 5 cuts") {
  const auto p = LowerBoundParams::desk(3);
  const Instance inst = instances::lower_bound_instance(p);
  const auto d = solver::solve(inst).division;
  CHECK(d.cut_count() >= 4);
  CHECK(d.cut_count() <= 5);
  for (std::size_t c : instances::count_support_cuts(p, d)) CHECK(c >= 2);
}

TEST_CASE("random instances are deterministic and valid") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance a = instances::random_instance(1 + seed % 6, 1 + seed % 5, seed);
    CHECK(a == instances::random_instance(1 + seed % 6, 1 + seed % 5, seed));
    CHECK_NOTHROW(a.validate(true));
    for (const Measure& m : a.measures) CHECK(m.segments() <= 1 + seed % 5);
  }
  const Instance one = instances::random_instance(1, 3, 5);
  CHECK(one.demands == Rs({"1"}));
  CHECK(instances::random_instance(3, 4, 1) != instances::random_instance(3, 4, 2));
}

TEST_CASE("golden random instance") {
  const std::string golden = slurp(std::string(DISPROP_TEST_DATA) + "/random_n3_s4_seed7.json");
  CHECK(json_io::write_instance(instances::random_instance(3, 4, 7)) == golden);
}

TEST_CASE("oracle: symmetric halving needs one cut") {
  const Instance inst = I({Measure::uniform(), Measure::uniform()}, {"1/2", "1/2"});
  const auto r = instances::oracle_min_cuts(inst, {2, 1, {}, 1'000'000});
  REQUIRE(r.best_cuts);
  CHECK(*r.best_cuts == 1);
  CHECK(r.witness->cuts == Rs({"1/2"}));
}

TEST_CASE("oracle: desk-scale lower bound for n = 2") {
  const Instance inst = instances::lower_bound_instance({2, R("1/100"), R("1/1000000")});
  const auto one = instances::oracle_min_cuts(inst, {1, 1, {}, 1'000'000});
  CHECK_FALSE(one.best_cuts);
  CHECK(one.evidence_only());
  const auto two = instances::oracle_min_cuts(inst, {2, 1, {}, 1'000'000});
  REQUIRE(two.best_cuts);
  CHECK(*two.best_cuts == 2);
  CHECK(verify(inst, *two.witness).valid);
  for (const Rational& c : two.witness->cuts) {
    CHECK(c >= R("49/100"));
    CHECK(c <= R("51/100"));
  }
}

TEST_CASE("oracle budget is explicit") {
  const Instance inst = instances::random_instance(3, 6, 3);
  CHECK_THROWS_AS(instances::oracle_min_cuts(inst, {4, 3, {}, 1000}), BudgetError);
}

TEST_CASE("property: oracle needs no more cuts than the solver") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = instances::random_instance(2 + seed % 2, 3, 500 + seed);
    const auto solved = solver::solve(inst).division;
    if (solved.cut_count() > 3) continue;
    const auto r = instances::oracle_min_cuts(inst, {solved.cut_count(), 1, solved.cuts, 50'000'000});
    REQUIRE(r.best_cuts);
    CHECK(*r.best_cuts <= solved.cut_count());
    CHECK(verify(inst, *r.witness).valid);
  }
}

TEST_CASE("property: finer grids never need more cuts") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Instance inst = instances::random_instance(2, 3, 900 + seed);
    std::optional<std::size_t> prev;
    for (std::size_t refine : {1u, 2u, 4u}) {
      const auto r = instances::oracle_min_cuts(inst, {2, refine, {}, 50'000'000});
      if (prev) {
        REQUIRE(r.best_cuts);
        CHECK(*r.best_cuts <= *prev);
      }
      if (r.best_cuts) prev = r.best_cuts;
    }
  }
}
