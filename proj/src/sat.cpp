#include "abq/sat.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace abq {

Assignment assignment_from_mask(uint32_t mask, int n) {
  Assignment a(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) a[j] = (mask >> j) & 1u;
  return a;
}

uint32_t mask_from_assignment(const Assignment& a) {
  uint32_t mask = 0;
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j]) mask |= (1u << j);
  return mask;
}

long long max_clause_count(int n) {
  if (n < 3) return 0;
  return static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
}

int clause_count_for_density(int n, double alpha) {
  return static_cast<int>(std::llround(alpha * n));
}

int clause_count_for_density(int n, long long num, long long den) {
  if (den <= 0) throw std::invalid_argument("density denominator must be positive");
  // round half up in exact integer arithmetic
  return static_cast<int>((2 * num * n + den) / (2 * den));
}

Formula generate_instance_m(int n, int m, RngStream& rng) {
  if (n < 3) throw std::invalid_argument("instance needs at least 3 variables");
  long long cap = max_clause_count(n);
  if (m > cap)
    throw std::invalid_argument("clause density exceeds the maximum: m=" +
                                std::to_string(m) + " > C(n,3)=" + std::to_string(cap));
  if (m < 0) throw std::invalid_argument("negative clause count");

  std::vector<Clause> all;
  all.reserve(static_cast<size_t>(cap));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) all.push_back({i, j, k});

  // partial Fisher-Yates: the first m slots end up a uniform m-subset
  for (int t = 0; t < m; ++t) {
    size_t pick = t + static_cast<size_t>(rng.next_below(all.size() - t));
    std::swap(all[t], all[pick]);
  }
  Formula f;
  f.n = n;
  f.clauses.assign(all.begin(), all.begin() + m);
  std::sort(f.clauses.begin(), f.clauses.end());
  return f;
}

Formula generate_instance(int n, double alpha, RngStream& rng) {
  return generate_instance_m(n, clause_count_for_density(n, alpha), rng);
}

void validate(const Formula& f) {
  if (f.n < 3) throw std::invalid_argument("formula has fewer than 3 variables");
  if (static_cast<long long>(f.clauses.size()) > max_clause_count(f.n))
    throw std::invalid_argument("more clauses than distinct 3-subsets");
  for (const Clause& c : f.clauses) {
    if (!(0 <= c[0] && c[0] < c[1] && c[1] < c[2] && c[2] < f.n))
      throw std::invalid_argument("clause is not a sorted triple of distinct in-range indices");
  }
  for (size_t i = 1; i < f.clauses.size(); ++i)
    if (f.clauses[i] == f.clauses[i - 1] ||
        std::lexicographical_compare(f.clauses[i].begin(), f.clauses[i].end(),
                                     f.clauses[i - 1].begin(), f.clauses[i - 1].end()))
      throw std::invalid_argument("clause list is not sorted and duplicate-free");
}

namespace {

std::vector<uint32_t> clause_masks(const Formula& f) {
  std::vector<uint32_t> masks;
  masks.reserve(f.clauses.size());
  for (const Clause& c : f.clauses)
    masks.push_back((1u << c[0]) | (1u << c[1]) | (1u << c[2]));
  return masks;
}

}  // namespace

int penalty_energy(const Formula& f, const Assignment& a) {
  if (static_cast<int>(a.size()) != f.n)
    throw std::invalid_argument("assignment length does not match variable count");
  uint32_t mask = mask_from_assignment(a);
  int e = 0;
  for (const Clause& c : f.clauses) {
    int t = ((mask >> c[0]) & 1) + ((mask >> c[1]) & 1) + ((mask >> c[2]) & 1);
    e += (t - 1) * (t - 1);
  }
  return e;
}

int violated_count(const Formula& f, const Assignment& a) {
  if (static_cast<int>(a.size()) != f.n)
    throw std::invalid_argument("assignment length does not match variable count");
  uint32_t mask = mask_from_assignment(a);
  int v = 0;
  for (const Clause& c : f.clauses) {
    int t = ((mask >> c[0]) & 1) + ((mask >> c[1]) & 1) + ((mask >> c[2]) & 1);
    v += (t != 1);
  }
  return v;
}

GroundSolution brute_force_ground(const Formula& f) {
  if (f.n > 24) throw std::invalid_argument("brute force capped at n <= 24");
  const std::vector<uint32_t> masks = clause_masks(f);
  GroundSolution g;
  g.energy = std::numeric_limits<int>::max();
  g.min_violated = std::numeric_limits<int>::max();
  const uint32_t total = 1u << f.n;
  for (uint32_t z = 0; z < total; ++z) {
    int e = 0, v = 0;
    for (uint32_t cm : masks) {
      int t = std::popcount(z & cm);
      e += (t - 1) * (t - 1);
      v += (t != 1);
    }
    if (e < g.energy) {
      g.energy = e;
      g.ground_masks.clear();
    }
    if (e == g.energy) g.ground_masks.push_back(z);
    g.min_violated = std::min(g.min_violated, v);
  }
  return g;
}

bool sat_oracle(const GroundSolution& g) { return g.energy < 0.5; }

bool sat_oracle(const Formula& f) { return sat_oracle(brute_force_ground(f)); }

int approximation_error(const Formula& f, const GroundSolution& g, GroundTieBreak tie) {
  int violated_at_ground;
  if (tie == GroundTieBreak::FirstFound) {
    violated_at_ground = violated_count(f, assignment_from_mask(g.ground_masks.front(), f.n));
  } else {
    violated_at_ground = std::numeric_limits<int>::max();
    for (uint32_t z : g.ground_masks)
      violated_at_ground =
          std::min(violated_at_ground, violated_count(f, assignment_from_mask(z, f.n)));
  }
  return violated_at_ground - g.min_violated;
}

int approximation_error(const Formula& f, GroundTieBreak tie) {
  return approximation_error(f, brute_force_ground(f), tie);
}

}  // namespace abq
