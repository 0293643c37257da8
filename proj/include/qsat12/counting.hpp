#pragma once

#include <cstdint>

#include "qsat12/bigint.hpp"
#include "qsat12/error.hpp"

namespace qsat12 {

// The closed-form counts below use the s-factor falling factorial
// n(n-1)...(n-s+1). A shifted (s-1)-factor variant starting at n-1 exists
// behind a switch; the enumeration oracle in the test suite pins Standard
// as the convention under which the tuple counts are exact.
enum class FallingConvention { Standard, ShiftedByOne };

inline constexpr FallingConvention kActiveFallingConvention = FallingConvention::Standard;

BigCount stirling2(uint32_t a, uint32_t b);
BigCount binomial_coeff(uint32_t a, uint32_t b);
BigCount falling_factorial(uint64_t n, uint32_t s,
                           FallingConvention conv = kActiveFallingConvention);

// Number of pure sequences of s1 universal literals over m variables:
// sum_k C(m,k) 2^k S(s1,k) k!.
BigCount d_pure_sequences(uint32_t m, uint32_t s1);

// Structured-tuple counts: (n)_s 2^s d(m,s+1), and the same times
// ((2s)^2 - 1) for bicycles. Snakes need s+1 even and >= 4; bicycles
// s+1 >= 3.
BigCount count_snakes(uint64_t n, uint32_t m, uint32_t s);
BigCount count_bicycles(uint64_t n, uint32_t m, uint32_t s);

// Exact rational expectations under clause probability p = c/(4mn); the
// double overloads convert at the reporting boundary.
BigRational expected_snakes_exact(uint64_t n, uint32_t m, const BigRational& c, uint32_t s);
BigRational expected_bicycles_exact(uint64_t n, uint32_t m, const BigRational& c, uint32_t s);
double expected_snakes(uint64_t n, uint32_t m, double c, uint32_t s);
double expected_bicycles(uint64_t n, uint32_t m, double c, uint32_t s);

// One term of the expectation split by the number k of distinct universal
// variables: 2^s (n)_s C(m,k) 2^k S(s+1,k) k! p^{s+1}.
BigRational g_coefficient_exact(uint32_t m, uint64_t n, const BigRational& c, uint32_t k,
                                uint32_t s1);
double g_coefficient(uint32_t m, uint64_t n, double c, uint32_t k, uint32_t s1);

// First-moment upper bound on the unsat probability, truncated at s_max:
// sum_{s=2}^{s_max} E(B_s).
double bicycle_union_bound(uint64_t n, uint32_t m, double c, uint32_t s_max);

// sqrt(1/a) (a/b)^b (a/(a-b))^{a-b} <= C(a,b) <= (a/b)^b (a/(a-b))^{a-b}
bool binomial_bounds_check(uint32_t a, uint32_t b);

struct ExpectationReport {
  uint64_t n = 0;
  uint32_t m = 0;
  double c = 0.0;
  uint32_t s = 0;
  double expected = 0.0;
  double empirical_mean = 0.0;
  double empirical_stderr = 0.0;
  uint64_t samples = 0;
};

// Precomputes every snake of length s+1, then counts occurrences per
// binomial-model sample across a worker pool with per-sample derived seeds.
ExpectationReport monte_carlo_snake_count(uint64_t n, uint32_t m, double c, uint32_t s,
                                          uint64_t samples, uint64_t seed,
                                          uint32_t threads = 0,
                                          uint64_t max_index_size = 10'000'000);

}  // namespace qsat12
