#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "abq/sat.hpp"

using namespace abq;

namespace {

// straightforward re-evaluation used as the oracle against the library path
int oracle_energy(const Formula& f, uint32_t mask) {
  int e = 0;
  for (const auto& cl : f.clauses) {
    int t = ((mask >> cl[0]) & 1) + ((mask >> cl[1]) & 1) + ((mask >> cl[2]) & 1);
    e += (t - 1) * (t - 1);
  }
  return e;
}

int oracle_violated(const Formula& f, uint32_t mask) {
  int v = 0;
  for (const auto& cl : f.clauses) {
    int t = ((mask >> cl[0]) & 1) + ((mask >> cl[1]) & 1) + ((mask >> cl[2]) & 1);
    v += (t != 1);
  }
  return v;
}

}  // namespace

TEST_CASE("clause counts") {
  CHECK(max_clause_count(3) == 1);
  CHECK(max_clause_count(6) == 20);
  CHECK(max_clause_count(10) == 120);
  CHECK(max_clause_count(14) == 364);

  // m = round(alpha * n), half away from zero
  CHECK(clause_count_for_density(10, 0.6) == 6);
  CHECK(clause_count_for_density(10, 0.45) == 5);
  CHECK(clause_count_for_density(10, 0.44) == 4);
  CHECK(clause_count_for_density(6, 0.25) == 2);  // 1.5 rounds up
  CHECK(clause_count_for_density(10, 3.0) == 30);

  // the rational overload agrees where the double is exact
  CHECK(clause_count_for_density(9, 1, 3) == 3);
  CHECK(clause_count_for_density(10, 2, 3) == 7);  // 6.67 -> 7
  CHECK(clause_count_for_density(9, 1, 2) == 5);   // 4.5 -> 5, away from zero
  CHECK(clause_count_for_density(12, 0.5) == clause_count_for_density(12, 1, 2));
}

TEST_CASE("assignment mask round trip") {
  Assignment a = assignment_from_mask(0b1011, 4);
  CHECK(a == Assignment{1, 1, 0, 1});
  CHECK(mask_from_assignment(a) == 0b1011);
  CHECK(assignment_from_mask(0, 3) == Assignment{0, 0, 0});
}

TEST_CASE("generated instances are canonical and reproducible") {
  RngStream rng(123);
  Formula f = generate_instance(8, 1.5, rng);
  CHECK(f.n == 8);
  CHECK(f.num_clauses() == 12);
  CHECK_NOTHROW(validate(f));

  std::set<Clause> seen;
  for (const auto& cl : f.clauses) {
    CHECK(cl[0] < cl[1]);
    CHECK(cl[1] < cl[2]);
    CHECK(cl[0] >= 0);
    CHECK(cl[2] < 8);
    CHECK(seen.insert(cl).second);  // no duplicates
  }
  CHECK(std::is_sorted(f.clauses.begin(), f.clauses.end()));

  RngStream rng2(123);
  Formula f2 = generate_instance(8, 1.5, rng2);
  CHECK(f2.clauses == f.clauses);

  RngStream rng3(124);
  Formula f3 = generate_instance(8, 1.5, rng3);
  CHECK(f3.clauses != f.clauses);
}

TEST_CASE("exhaustive draw covers every clause") {
  RngStream rng(5);
  Formula f = generate_instance_m(4, 4, rng);  // C(4,3) = 4
  CHECK(f.num_clauses() == 4);
  std::set<Clause> all{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  CHECK(std::set<Clause>(f.clauses.begin(), f.clauses.end()) == all);

  CHECK_THROWS_AS(generate_instance_m(4, 5, rng), std::invalid_argument);
}

TEST_CASE("single-draw frequencies are roughly uniform") {
  std::map<Clause, int> freq;
  RngStream rng(77);
  const int trials = 5000;
  for (int t = 0; t < trials; ++t) {
    Formula f = generate_instance_m(5, 1, rng);
    ++freq[f.clauses[0]];
  }
  CHECK(freq.size() == 10);  // C(5,3)
  for (const auto& [cl, count] : freq) {
    CHECK(count > 350);  // expected 500; > 7 sigma margin
    CHECK(count < 650);
  }
}

TEST_CASE("validate rejects malformed formulas") {
  CHECK_THROWS_AS(validate(Formula{3, {{0, 2, 1}}}), std::invalid_argument);   // unsorted
  CHECK_THROWS_AS(validate(Formula{3, {{0, 1, 1}}}), std::invalid_argument);   // repeat
  CHECK_THROWS_AS(validate(Formula{3, {{0, 1, 3}}}), std::invalid_argument);   // range
  CHECK_THROWS_AS(validate(Formula{4, {{0, 1, 2}, {0, 1, 2}}}),
                  std::invalid_argument);                                      // duplicate
  CHECK_THROWS_AS(validate(Formula{2, {}}), std::invalid_argument);            // n < 3
  CHECK_NOTHROW(validate(Formula{4, {{0, 1, 2}, {0, 1, 3}}}));
}

TEST_CASE("penalty energy per clause takes values 0, 1, 4") {
  Formula f{3, {{0, 1, 2}}};
  CHECK(penalty_energy(f, assignment_from_mask(0b000, 3)) == 1);  // no var true
  CHECK(penalty_energy(f, assignment_from_mask(0b001, 3)) == 0);  // exactly one
  CHECK(penalty_energy(f, assignment_from_mask(0b010, 3)) == 0);
  CHECK(penalty_energy(f, assignment_from_mask(0b011, 3)) == 1);  // two true
  CHECK(penalty_energy(f, assignment_from_mask(0b111, 3)) == 4);  // all three
  CHECK(violated_count(f, assignment_from_mask(0b111, 3)) == 1);
  CHECK(violated_count(f, assignment_from_mask(0b010, 3)) == 0);
}

TEST_CASE("brute force ground matches an independent evaluation") {
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    RngStream rng(seed);
    Formula f = generate_instance(7, 1.2, rng);
    GroundSolution g = brute_force_ground(f);

    int best = 1 << 30, best_viol = 1 << 30;
    std::vector<uint32_t> best_masks;
    for (uint32_t z = 0; z < (1u << 7); ++z) {
      int e = oracle_energy(f, z);
      best_viol = std::min(best_viol, oracle_violated(f, z));
      if (e < best) {
        best = e;
        best_masks.assign(1, z);
      } else if (e == best) {
        best_masks.push_back(z);
      }
    }
    CHECK(g.energy == best);
    CHECK(g.min_violated == best_viol);
    CHECK(g.ground_masks == best_masks);
    for (uint32_t z : g.ground_masks)
      CHECK(penalty_energy(f, assignment_from_mask(z, f.n)) == g.energy);
  }
}

TEST_CASE("sat oracle on known formulas") {
  CHECK(sat_oracle(Formula{3, {{0, 1, 2}}}));

  // every variable sits in 3 of the 4 clauses, so 3 * (#true) = 4 clauses
  // would be needed; no integer solution, hence UNSAT
  Formula unsat{4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  CHECK_FALSE(sat_oracle(unsat));
  GroundSolution g = brute_force_ground(unsat);
  CHECK(g.energy >= 1);
  CHECK(g.min_violated >= 1);
}

TEST_CASE("approximation error is non-negative and zero on satisfiable instances") {
  for (uint64_t seed = 10; seed < 30; ++seed) {
    RngStream rng(seed);
    Formula f = generate_instance(8, 2.5, rng);
    int err_min = approximation_error(f, GroundTieBreak::MinViolated);
    int err_first = approximation_error(f, GroundTieBreak::FirstFound);
    CHECK(err_min >= 0);
    CHECK(err_first >= err_min);
  }
  Formula sat{3, {{0, 1, 2}}};
  CHECK(approximation_error(sat) == 0);
}
