#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "abq/rng.hpp"

namespace abq {

// A clause of the 1-3-SAT+ problem: three distinct positive literals,
// stored as sorted 0-based variable indices. The clause is satisfied iff
// exactly one of the three variables is True.
using Clause = std::array<int, 3>;

struct Formula {
  int n = 0;
  std::vector<Clause> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

// bits[j] = 1 means variable j is True
using Assignment = std::vector<uint8_t>;

Assignment assignment_from_mask(uint32_t mask, int n);
uint32_t mask_from_assignment(const Assignment& a);

struct GroundSolution {
  int energy = 0;                      // E_g, exact minimum of the penalty energy
  std::vector<uint32_t> ground_masks;  // every assignment attaining E_g
  int min_violated = 0;                // independent minimum of the violated-clause count
};

enum class GroundTieBreak { MinViolated, FirstFound };

long long max_clause_count(int n);  // C(n,3)

// m = round(alpha * n), half away from zero; the exact-rational overload is
// used when alpha arrives as a fraction string like "10/3".
int clause_count_for_density(int n, double alpha);
int clause_count_for_density(int n, long long num, long long den);

// m distinct clauses drawn uniformly without replacement from all 3-subsets,
// returned in canonical form (sorted triples, lexicographically sorted list).
Formula generate_instance(int n, double alpha, RngStream& rng);
Formula generate_instance_m(int n, int m, RngStream& rng);

// throws std::invalid_argument when a Formula invariant is broken
void validate(const Formula& f);

int penalty_energy(const Formula& f, const Assignment& a);
int violated_count(const Formula& f, const Assignment& a);

// exhaustive over all 2^n assignments; n <= 24
GroundSolution brute_force_ground(const Formula& f);

bool sat_oracle(const GroundSolution& g);
bool sat_oracle(const Formula& f);

// violated count of the (tie-broken) minimum-energy assignment minus the true
// Max-1-3-SAT+ optimum
int approximation_error(const Formula& f, const GroundSolution& g,
                        GroundTieBreak tie = GroundTieBreak::MinViolated);
int approximation_error(const Formula& f,
                        GroundTieBreak tie = GroundTieBreak::MinViolated);

}  // namespace abq
