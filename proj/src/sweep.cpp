#include "qsat12/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "qsat12/generator.hpp"
#include "qsat12/rng.hpp"
#include "qsat12/threshold.hpp"

namespace qsat12 {

uint32_t resolve_m(const MRule& rule, uint32_t n) {
  if (const auto* f = std::get_if<FixedM>(&rule)) {
    if (f->m == 0) throw Error(Errc::DomainError, "m must be positive");
    return f->m;
  }
  const auto& a = std::get<AlphaLog>(rule);
  if (!(a.alpha > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");
  double m = std::floor(a.alpha * std::log(static_cast<double>(n)));
  if (!(m >= 1.0)) throw Error(Errc::DomainError, "alpha ln n below 1; no universal variables");
  return static_cast<uint32_t>(m);
}

namespace {

// Counts satisfiable draws at one grid point. Sample k is seeded with
// derive_seed(point_seed, k), so the result is independent of thread count
// and any single sample can be replayed in isolation.
SweepRow run_point(double c, uint32_t n, uint32_t m, uint32_t samples, uint64_t point_seed,
                   bool binomial_model, uint32_t threads, uint32_t m_cap) {
  SweepRow row;
  row.c = c;
  row.n = n;
  row.m = m;
  row.samples = samples;
  row.seed = point_seed;

  GenConfig cfg;
  cfg.m = m;
  cfg.n = n;
  if (binomial_model) {
    cfg.model = Binomial{c};
  } else {
    cfg.model = UniformL{static_cast<uint64_t>(std::floor(c * n))};
  }

  const auto t0 = std::chrono::steady_clock::now();
  uint32_t nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<uint32_t>(nthreads, std::max(1u, samples));

  std::atomic<uint64_t> sat{0};
  std::mutex err_mu;
  std::exception_ptr first_err;

  auto worker = [&](uint32_t tid) {
    GenConfig local = cfg;
    uint64_t local_sat = 0;
    try {
      for (uint32_t k = tid; k < samples; k += nthreads) {
        local.seed = derive_seed(point_seed, k);
        Formula12 f = sample(local);
        if (evaluate(f, m_cap)) ++local_sat;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      if (!first_err) first_err = std::current_exception();
    }
    sat += local_sat;
  };

  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (uint32_t t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  if (first_err) std::rethrow_exception(first_err);

  const auto t1 = std::chrono::steady_clock::now();
  row.sat_count = static_cast<uint32_t>(sat.load());
  row.p_hat = samples ? static_cast<double>(row.sat_count) / samples : 0.0;
  row.std_err = samples ? std::sqrt(row.p_hat * (1.0 - row.p_hat) / samples) : 0.0;
  row.wall_ms = static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  if (cfg.n < 2) throw Error(Errc::DomainError, "need n >= 2");
  if (cfg.c_grid.empty()) throw Error(Errc::EmptyInput, "empty c grid");
  if (cfg.samples_per_point == 0) throw Error(Errc::DomainError, "samples must be positive");
  for (size_t i = 0; i + 1 < cfg.c_grid.size(); ++i) {
    if (!(cfg.c_grid[i] < cfg.c_grid[i + 1])) {
      throw Error(Errc::DomainError, "c grid must be strictly increasing");
    }
  }
  const uint32_t m = resolve_m(cfg.m_rule, cfg.n);
  std::vector<SweepRow> rows;
  rows.reserve(cfg.c_grid.size());
  for (size_t i = 0; i < cfg.c_grid.size(); ++i) {
    rows.push_back(run_point(cfg.c_grid[i], cfg.n, m, cfg.samples_per_point,
                             derive_seed(cfg.seed, i), cfg.binomial_model, cfg.threads,
                             cfg.m_cap));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "c,n,m,samples,sat_count,p_hat,stderr,seed,wall_ms\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%u,%u,%u,%u,%.6f,%.6f,%llu,%llu\n", r.c, r.n, r.m,
                  r.samples, r.sat_count, r.p_hat, r.std_err,
                  static_cast<unsigned long long>(r.seed),
                  static_cast<unsigned long long>(r.wall_ms));
    out += buf;
  }
  return out;
}

ThresholdEstimate estimate_threshold(uint32_t n, const MRule& m_rule, uint32_t samples,
                                     uint64_t seed, double tol, uint32_t threads,
                                     uint32_t m_cap) {
  if (n < 2) throw Error(Errc::DomainError, "need n >= 2");
  if (samples == 0) throw Error(Errc::DomainError, "samples must be positive");
  if (!(tol > 0.0)) throw Error(Errc::DomainError, "tolerance must be positive");
  const uint32_t m = resolve_m(m_rule, n);

  ThresholdEstimate est;
  double lo = 1.0, hi = 2.0;
  size_t probe_index = 0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    SweepRow row = run_point(mid, n, m, samples, derive_seed(seed, probe_index++), false,
                             threads, m_cap);
    est.probes.push_back(row);
    if (row.p_hat > 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  est.c_hat = 0.5 * (lo + hi);
  std::sort(est.probes.begin(), est.probes.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.c < b.c; });
  for (size_t i = 0; i + 1 < est.probes.size(); ++i) {
    if (est.probes[i].p_hat < est.probes[i + 1].p_hat) {
      est.non_monotone_warning = true;
      break;
    }
  }
  return est;
}

std::string figure1_table(const std::vector<double>& alphas) {
  std::string out = "alpha,c_star\n";
  char buf[128];
  for (double a : alphas) {
    ThresholdResult r = critical_ratio(a);
    std::snprintf(buf, sizeof buf, "%.9f,%.9f\n", a, r.c_star);
    out += buf;
  }
  return out;
}

}  // namespace qsat12
