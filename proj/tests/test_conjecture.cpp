#include <doctest.h>

#include <fstream>
#include <sstream>

#include "disprop/conjecture.hpp"
#include "disprop/errors.hpp"
#include "disprop/instances.hpp"
#include "disprop/json_io.hpp"
#include "support.hpp"

using namespace disprop;
using namespace testing;
using conjecture::Outcome;

namespace {

// Does some arc with endpoints on the grid k/steps satisfy the partition
// property for some split? Straight from the definition.
bool grid_witness_exists(const Instance& inst, long steps) {
  const std::size_t n = inst.size();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Rational sum_p;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) sum_p += inst.demands[i];
    }
    const Rational sum_q = Rational(1) - sum_p;
    for (long a = 0; a < steps; ++a) {
      for (long len = 0; len <= steps; ++len) {
        const CircleArc arc{Rational(a, steps), Rational(len, steps)};
        std::optional<Rational> min_p, min_q;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) {
            const Rational m = arc_mass(inst.measures[i], arc);
            min_p = min_p ? min(*min_p, m) : m;
          } else {
            const Rational m = arc_mass(inst.measures[i], arc.complement());
            min_q = min_q ? min(*min_q, m) : m;
          }
        }
        if (*min_p == sum_p && *min_q == sum_q) return true;
      }
    }
  }
  return false;
}

long grid_steps(const Instance& inst) {
  BigInt l = 1;
  for (const Measure& m : inst.measures) {
    for (const Rational& b : m.breakpoints()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b.denominator().get_mpz_t());
  }
  return l.get_si();
}

}  // namespace

TEST_CASE("two uniform halves") {
  const Instance inst = I({Measure::uniform(), Measure::uniform()}, {"1/2", "1/2"});
  const auto r = conjecture::search_witness(inst);
  REQUIRE(r.outcome == Outcome::Found);
  const auto& w = *r.witness;
  CHECK(w.p == std::vector<std::size_t>{0});
  CHECK(w.q == std::vector<std::size_t>{1});
  CHECK(w.arc == CircleArc{R("0"), R("1/2")});
  CHECK(w.residual_p == R("0"));
  CHECK(w.residual_q == R("0"));
  CHECK_FALSE(w.degenerate);
  CHECK(conjecture::check_witness(inst, w));
}

TEST_CASE("three identical uniform thirds") {
  const Instance inst = I({Measure::uniform(), Measure::uniform(), Measure::uniform()}, {"1/3", "1/3", "1/3"});
  const auto r = conjecture::search_witness(inst);
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(r.witness->p == std::vector<std::size_t>{0});
  CHECK(r.witness->q == std::vector<std::size_t>{1, 2});
  CHECK(r.witness->arc.length == R("1/3"));
  CHECK(conjecture::check_witness(inst, *r.witness));
}

TEST_CASE("zero demands allow degenerate arcs") {
  const Instance inst = I({left_half(), right_half()}, {"0", "1"});
  const auto r = conjecture::search_witness(inst);
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(r.witness->degenerate);
  CHECK(conjecture::check_witness(inst, *r.witness));
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(conjecture::search_witness(I({Measure::uniform()}, {"1"})), PreconditionError);
  CHECK_THROWS_AS(conjecture::search_witness(I({Measure::uniform(), Measure::uniform()}, {"1/3", "1/3"})),
                  PreconditionError);
  CHECK_THROWS_AS(conjecture::search_witness(I({Measure::uniform(), Measure::uniform()}, {"1/2", "1/2"}), {0, 0}),
                  DomainError);
}

TEST_CASE("check_witness rejects tampered witnesses") {
  const Instance inst = I({Measure::uniform(), left_half()}, {"1/3", "2/3"});
  auto w = *conjecture::search_witness(inst).witness;
  REQUIRE(conjecture::check_witness(inst, w));
  auto moved = w;
  moved.arc.start = w.arc.start == R("1/7") ? R("1/5") : R("1/7");
  CHECK_FALSE(conjecture::check_witness(inst, moved));
  auto overlapping = w;
  overlapping.q = overlapping.p;
  CHECK_FALSE(conjecture::check_witness(inst, overlapping));
  auto empty = w;
  empty.p.clear();
  CHECK_FALSE(conjecture::check_witness(inst, empty));
}

TEST_CASE("two measures always admit a witness") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = instances::random_instance(2, 5, seed);
    const auto r = conjecture::search_witness(inst);
    REQUIRE(r.outcome == Outcome::Found);
    CHECK(r.witness->residual_p.is_zero());
    CHECK(r.witness->residual_q.is_zero());
    CHECK(conjecture::check_witness(inst, *r.witness));
    CHECK(r.evaluated <= r.planned);
  }
}

TEST_CASE("exact search finds whatever a grid search finds") {
  int grid_hits = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = instances::random_instance(3, 2, 300 + seed);
    const long steps = grid_steps(inst);
    if (steps > 30) continue;
    const auto r = conjecture::search_witness(inst);
    if (grid_witness_exists(inst, steps)) {
      ++grid_hits;
      CHECK(r.outcome == Outcome::Found);
    }
    if (r.outcome == Outcome::Found) CHECK(conjecture::check_witness(inst, *r.witness));
  }
  CHECK(grid_hits > 0);
}

TEST_CASE("outcome is invariant under refinement") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Instance inst = instances::random_instance(3, 3, 700 + seed);
    const auto base = conjecture::search_witness(inst);
    for (std::size_t refine : {2u, 3u}) {
      const auto finer = conjecture::search_witness(inst, {refine, 0});
      CHECK(finer.outcome == base.outcome);
      if (finer.witness) CHECK(conjecture::check_witness(inst, *finer.witness));
    }
  }
}

TEST_CASE("rotation moves witnesses with the measures") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = instances::random_instance(2 + seed % 2, 3, 40 + seed);
    const auto r = conjecture::search_witness(inst);
    for (const Rational& rho : Rs({"1/3", "5/7", "1/2"})) {
      const Instance turned = conjecture::rotated(inst, rho);
      const auto rt = conjecture::search_witness(turned);
      CHECK(rt.outcome == r.outcome);
      if (r.witness) {
        CHECK(conjecture::check_witness(turned, conjecture::rotated(*r.witness, rho)));
        // And back again.
        CHECK(conjecture::check_witness(inst, conjecture::rotated(*rt.witness, Rational(1) - rho)));
      }
    }
  }
}

TEST_CASE("budget exhaustion is reported, not hidden") {
  const Instance inst = instances::random_instance(3, 4, 11);
  const auto r = conjecture::search_witness(inst, {1, 3});
  if (r.outcome != Outcome::Found) {
    CHECK(r.outcome == Outcome::BudgetExhausted);
    CHECK(r.evaluated == 3);
  }
  CHECK(r.evaluated <= 3);
  CHECK(r.planned > 3);
}

TEST_CASE("witness JSON round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = instances::random_instance(3, 3, seed);
    const auto r = conjecture::search_witness(inst);
    if (!r.witness) continue;
    CHECK(json_io::witness_from_json(json_io::to_json(*r.witness)) == *r.witness);
  }
}

TEST_CASE("campaign: two agents, fifty instances") {
  conjecture::CampaignOptions opt;
  opt.n = 2;
  opt.count = 50;
  opt.seed = 2024;
  const auto records = conjecture::stress_campaign(opt);
  REQUIRE(records.size() == 50);
  for (const auto& rec : records) {
    CHECK(rec.result.outcome == Outcome::Found);
    CHECK(conjecture::check_witness(rec.instance, *rec.result.witness));
    CHECK(rec.instance == instances::random_instance(2, opt.max_segments, rec.seed));
    CHECK_FALSE(rec.elapsed_ms);
  }
}

TEST_CASE("campaign: deterministic report") {
  conjecture::CampaignOptions opt;
  opt.n = 3;
  opt.count = 6;
  opt.seed = 5;
  std::string first, second;
  for (const auto& rec : conjecture::stress_campaign(opt)) first += json_io::dump_line(json_io::to_json(rec));
  for (const auto& rec : conjecture::stress_campaign(opt)) second += json_io::dump_line(json_io::to_json(rec));
  CHECK(first == second);
  CHECK(conjecture::campaign_instance_seed(5, 0) != conjecture::campaign_instance_seed(5, 1));
  CHECK(conjecture::campaign_instance_seed(5, 0) != conjecture::campaign_instance_seed(6, 0));
}

TEST_CASE("campaign: frozen golden report") {
  conjecture::CampaignOptions opt;
  opt.n = 3;
  opt.count = 1;
  opt.seed = 7;
  opt.max_segments = 4;
  std::string report;
  for (const auto& rec : conjecture::stress_campaign(opt)) report += json_io::dump_line(json_io::to_json(rec));
  std::ifstream in(std::string(DISPROP_TEST_DATA) + "/campaign_n3_seed7.jsonl");
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(report == golden.str());
}
