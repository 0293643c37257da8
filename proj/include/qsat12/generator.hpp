#pragma once

#include <cstdint>
#include <variant>

#include "qsat12/bigint.hpp"
#include "qsat12/formula.hpp"

namespace qsat12 {

struct UniformL {
  uint64_t L = 0;
};

struct Binomial {
  double c = 0.0;
};

struct GenConfig {
  uint32_t m = 1;
  uint32_t n = 2;
  std::variant<UniformL, Binomial> model;
  uint64_t seed = 0;
};

// 4 m n (n-1), the number of distinct (1,2)-clauses over m universal and n
// existential variables.
BigCount clause_universe_size(uint32_t m, uint32_t n);
uint64_t clause_universe_size_u64(uint32_t m, uint32_t n);

// Bijection between [0, N) and the canonical clause universe.
Clause12 clause_from_rank(uint32_t m, uint32_t n, uint64_t rank);
uint64_t rank_of_clause(uint32_t m, uint32_t n, const Clause12& c);

// Exactly L pairwise-distinct clauses, uniform over L-subsets of the
// universe. Deterministic in (cfg, seed).
Formula12 sample_uniform(uint32_t m, uint32_t n, uint64_t L, uint64_t seed);

// Each universe clause included independently with probability c/(4mn).
Formula12 sample_binomial(uint32_t m, uint32_t n, double c, uint64_t seed);

Formula12 sample(const GenConfig& cfg);

}  // namespace qsat12
