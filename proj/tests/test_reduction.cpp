#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "d4tuples/bounds.hpp"
#include "d4tuples/errors.hpp"
#include "d4tuples/reduction.hpp"

using namespace d4;

TEST_CASE("build_instance shapes") {
  Integer M0("43000000000000000000");
  ReductionInstance inst = build_instance(1, 3360, 1, M0);
  CHECK(inst.precision >= 2 * 66 + 64);
  // alpha < beta, so kappa < 1
  CHECK(inst.kappa.upper_double() < 1.0);
  CHECK(inst.kappa.lower_double() > 0.0);
  CHECK(inst.B.lower_double() > 1.0);
  CHECK(inst.A.lower_double() > 0.0);

  ReductionInstance i315 = build_instance(3, 15, -1, 100);
  double expected = std::log((7 + std::sqrt(45.0)) / 2) /
                    std::log((8 + std::sqrt(60.0)) / 2);
  CHECK(i315.kappa.lower_double() <= expected);
  CHECK(i315.kappa.upper_double() >= expected);

  CHECK_THROWS_AS(build_instance(1, 3360, 1, 0), DomainError);
}

TEST_CASE("bd_step collapses the b2 sextuple bound") {
  Integer M0("43000000000000000000");
  for (int eps : {1, -1}) {
    ReductionInstance inst = build_instance(1, 3360, eps, M0);
    BdStepOutcome out = bd_step(inst);
    REQUIRE(out.success);
    CHECK(out.q > 6 * M0);
    CHECK(out.eps0.lower_double() > 0.0);
    CHECK(out.new_M <= 6);  // this pair collapses below 7
  }
}

TEST_CASE("degenerate mu = 0 instance yields no step") {
  ReductionInstance inst;
  inst.a = 1;
  inst.b = 96;
  inst.epsilon = 1;
  inst.precision = 256;
  inst.kappa = (CertifiedReal::exact(Integer(1), 256) +
                CertifiedReal::exact(Integer(5), 256).sqrt()) *
               CertifiedReal::from_rational(Rational(1, 2), 256);
  inst.mu = CertifiedReal::exact(Integer(0), 256);
  inst.A = CertifiedReal::exact(Integer(1), 256);
  inst.B = CertifiedReal::exact(Integer(4), 256);
  inst.M = 100;
  BdStepOutcome out = bd_step(inst);
  CHECK(!out.success);
  CHECK(out.convergents_tried >= 1);
  // eps0 = -M ||kappa q|| <= 0 for every convergent
  CHECK(out.eps0.upper_double() <= 0.0);
}

TEST_CASE("reduce_pair on the flagship pairs") {
  Integer M0("43000000000000000000");
  ReductionTranscript tr = reduce_pair(1, 3360, M0, 5);
  CHECK(tr.resolved);
  CHECK(tr.final_M <= 6);

  // b = b_1 cases reach m < 2 within three rounds
  for (long a : {1L, 2L, 7L}) {
    Integer b = 64 * Integer(a) + 32;
    Integer start = b1_case_m_upper_derived(a, 2).floor_upper() + 1;
    ReductionTranscript t = reduce_pair(a, b, start, 3);
    CHECK(t.resolved);
    CHECK(t.final_M <= 1);
    CHECK(t.rounds <= 3);
  }
}

TEST_CASE("transcript bounds decrease strictly by round") {
  Integer M0("43000000000000000000");
  ReductionTranscript tr = reduce_pair(5, 170016, M0, 5);
  REQUIRE(tr.resolved);
  Integer prev = M0;
  for (int round = 1; round <= tr.rounds; ++round) {
    Integer round_max(0);
    bool seen = false;
    for (const auto& step : tr.steps)
      if (step.round == round) {
        round_max = std::max(round_max, step.new_M);
        seen = true;
      }
    if (!seen) continue;
    if (round < tr.rounds) CHECK(round_max < prev);
    prev = round_max;
  }
  CHECK(tr.final_M <= 6);
}

TEST_CASE("reduce_pair is reproducible at doubled precision") {
  Integer M0("43000000000000000000");
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 3360}, {4, 93024}}) {
    ReductionTranscript t1 = reduce_pair(a, b, M0, 5, 256);
    ReductionTranscript t2 = reduce_pair(a, b, M0, 5, 512);
    CHECK(t1.final_M == t2.final_M);
    REQUIRE(t1.steps.size() == t2.steps.size());
    for (std::size_t i = 0; i < t1.steps.size(); ++i)
      CHECK(t1.steps[i].q == t2.steps[i].q);
  }
}

TEST_CASE("reduce_pair runs on the excluded a=3 witness pair") {
  // callers skip a = 3; the engine itself treats the pair like any other
  ReductionTranscript tr = reduce_pair(3, 15, 100, 3);
  CHECK(tr.initial_M == 100);
  CHECK(tr.rounds >= 1);
}

TEST_CASE("brute force oracle") {
  CHECK(brute_force_oracle(1, 96, 1000).empty());
  CHECK(brute_force_oracle(5, 352, 1000).empty());
  auto hits = brute_force_oracle(3, 15, 1000);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].m == 2);
  CHECK(hits[0].n == 2);
  CHECK(hits[0].z == 58);
  CHECK(hits[0].epsilon == -1);
  CHECK_THROWS_AS(brute_force_oracle(1, 96, 10001), DomainError);
}

TEST_CASE("soundness cross-check: reduced pairs have no scan solutions") {
  for (long a : {1L, 2L, 4L, 5L}) {
    Integer b = 64 * Integer(a) + 32;
    Integer start = b1_case_m_upper_derived(a, 2).floor_upper() + 1;
    ReductionTranscript tr = reduce_pair(a, b, start, 3);
    REQUIRE(tr.resolved);
    Integer probe = std::max(tr.final_M, Integer(20));
    CHECK(brute_force_oracle(a, b, probe).empty());
  }
}

TEST_CASE("parity-restricted scan agrees with the unrestricted scan") {
  // Assumption-compliant contexts have no solutions at all; the a=3 witness
  // context has its solution at even indices, so filtering changes nothing.
  for (auto [a, b] : std::vector<std::pair<long, long>>{
           {1, 96}, {2, 160}, {3, 15}}) {
    auto all = find_intersections(a, b, 60);
    std::vector<IntersectionHit> even;
    for (const auto& hit : all)
      if (hit.m % 2 == 0 && hit.n % 2 == 0) even.push_back(hit);
    CHECK(all.size() == even.size());
  }
}

TEST_CASE("step records serialize with enclosure endpoints") {
  Integer M0("43000000000000000000");
  ReductionTranscript tr = reduce_pair(1, 3360, M0, 2);
  REQUIRE(!tr.steps.empty());
  std::string line = to_json(tr.steps[0], tr.a, tr.b);
  CHECK(line.find("\"a\": 1") != std::string::npos);
  CHECK(line.find("\"q\": \"") != std::string::npos);
  CHECK(line.find("eps0_lo") != std::string::npos);
  CHECK(line.find("precision_bits") != std::string::npos);
}
