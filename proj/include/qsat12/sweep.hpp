#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qsat12/evaluator.hpp"

namespace qsat12 {

struct FixedM {
  uint32_t m = 1;
};

// m = floor(alpha ln n)
struct AlphaLog {
  double alpha = 1.0;
};

using MRule = std::variant<FixedM, AlphaLog>;

uint32_t resolve_m(const MRule& rule, uint32_t n);

struct SweepConfig {
  uint32_t n = 0;
  MRule m_rule = FixedM{1};
  std::vector<double> c_grid;  // strictly increasing
  uint32_t samples_per_point = 1;
  uint64_t seed = 0;
  bool binomial_model = false;  // default: uniform-L with L = floor(c n)
  uint32_t threads = 0;         // 0 = hardware default
  uint32_t m_cap = kDefaultUniversalCap;
};

struct SweepRow {
  double c = 0.0;
  uint32_t n = 0;
  uint32_t m = 0;
  uint32_t samples = 0;
  uint32_t sat_count = 0;
  double p_hat = 0.0;
  double std_err = 0.0;
  uint64_t seed = 0;  // per-point derived seed; sample k uses derive_seed(seed, k)
  uint64_t wall_ms = 0;
};

// One row per grid point; bit-exact reproducible for a fixed config
// regardless of thread count.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

// Exact CSV schema: c,n,m,samples,sat_count,p_hat,stderr,seed,wall_ms
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct ThresholdEstimate {
  double c_hat = 0.0;
  bool non_monotone_warning = false;
  std::vector<SweepRow> probes;  // sorted by c
};

// Empirical bisection on c in [1,2] for p_hat = 1/2; assumes p_hat is
// monotone in expectation and reports (without failing) when the observed
// probes violate that.
ThresholdEstimate estimate_threshold(uint32_t n, const MRule& m_rule, uint32_t samples,
                                     uint64_t seed, double tol, uint32_t threads = 0,
                                     uint32_t m_cap = kDefaultUniversalCap);

// CSV of (alpha, c_star(alpha)) rows.
std::string figure1_table(const std::vector<double>& alphas);

}  // namespace qsat12
