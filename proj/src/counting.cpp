#include "qsat12/counting.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "qsat12/formula.hpp"
#include "qsat12/generator.hpp"
#include "qsat12/rng.hpp"

namespace qsat12 {

BigCount stirling2(uint32_t a, uint32_t b) {
  if (b > a) return 0;
  if (a == 0) return b == 0 ? 1 : 0;
  if (b == 0) return 0;
  // row-wise recurrence S(i,j) = j S(i-1,j) + S(i-1,j-1)
  std::vector<BigCount> row(b + 1, 0);
  row[0] = 1;  // S(0,0)
  for (uint32_t i = 1; i <= a; ++i) {
    for (uint32_t j = std::min(i, b); j >= 1; --j) {
      row[j] = BigCount(j) * row[j] + row[j - 1];
    }
    row[0] = 0;
  }
  return row[b];
}

BigCount binomial_coeff(uint32_t a, uint32_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  BigCount r = 1;
  for (uint32_t i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
  }
  return r;
}

BigCount falling_factorial(uint64_t n, uint32_t s, FallingConvention conv) {
  const bool standard = conv == FallingConvention::Standard;
  if (!standard && (n == 0 || s == 0)) return 1;
  uint64_t first = standard ? n : n - 1;
  uint32_t factors = standard ? s : s - 1;
  if (factors > first) return 0;
  BigCount r = 1;
  for (uint32_t i = 0; i < factors; ++i) r *= BigCount(first - i);
  return r;
}

BigCount d_pure_sequences(uint32_t m, uint32_t s1) {
  BigCount total = 0;
  for (uint32_t k = 1; k <= std::min(m, s1); ++k) {
    BigCount term = binomial_coeff(m, k);
    term <<= k;
    term *= stirling2(s1, k);
    for (uint32_t i = 2; i <= k; ++i) term *= i;
    total += term;
  }
  return total;
}

namespace {

BigCount tuple_count_core(uint64_t n, uint32_t m, uint32_t s) {
  BigCount r = falling_factorial(n, s);
  r <<= s;
  r *= d_pure_sequences(m, s + 1);
  return r;
}

void check_snake_length(uint32_t s) {
  if ((s + 1) % 2 != 0 || s + 1 < 4) {
    throw Error(Errc::BadLength, "snake length s+1 must be even and at least 4");
  }
}

void check_bicycle_length(uint32_t s) {
  if (s + 1 < 3) throw Error(Errc::BadLength, "bicycle length s+1 must be at least 3");
}

BigRational clause_probability(uint64_t n, uint32_t m, const BigRational& c) {
  BigRational p = c / (BigRational(4) * m * n);
  if (p < 0 || p > 1) {
    throw Error(Errc::ProbabilityOutOfRange, "c/(4mn) must lie in [0,1]");
  }
  return p;
}

BigRational pow_rational(const BigRational& x, uint32_t e) {
  BigRational r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

BigCount count_snakes(uint64_t n, uint32_t m, uint32_t s) {
  check_snake_length(s);
  return tuple_count_core(n, m, s);
}

BigCount count_bicycles(uint64_t n, uint32_t m, uint32_t s) {
  check_bicycle_length(s);
  return tuple_count_core(n, m, s) * (BigCount(4) * s * s - 1);
}

BigRational expected_snakes_exact(uint64_t n, uint32_t m, const BigRational& c, uint32_t s) {
  check_snake_length(s);
  BigRational p = clause_probability(n, m, c);
  return pow_rational(p, s + 1) * BigRational(tuple_count_core(n, m, s));
}

BigRational expected_bicycles_exact(uint64_t n, uint32_t m, const BigRational& c, uint32_t s) {
  check_bicycle_length(s);
  BigRational p = clause_probability(n, m, c);
  return pow_rational(p, s + 1) * BigRational(tuple_count_core(n, m, s)) *
         (BigCount(4) * s * s - 1);
}

double expected_snakes(uint64_t n, uint32_t m, double c, uint32_t s) {
  return to_double(expected_snakes_exact(n, m, BigRational(c), s));
}

double expected_bicycles(uint64_t n, uint32_t m, double c, uint32_t s) {
  return to_double(expected_bicycles_exact(n, m, BigRational(c), s));
}

BigRational g_coefficient_exact(uint32_t m, uint64_t n, const BigRational& c, uint32_t k,
                                uint32_t s1) {
  if (k < 1 || k > std::min<uint64_t>(m, s1)) {
    throw Error(Errc::KOutOfRange, "k must lie in [1, min(m, s+1)]");
  }
  BigRational p = clause_probability(n, m, c);
  BigCount count = binomial_coeff(m, k);
  count <<= k;
  count *= stirling2(s1, k);
  for (uint32_t i = 2; i <= k; ++i) count *= i;
  count *= falling_factorial(n, s1 - 1);
  count <<= (s1 - 1);
  return pow_rational(p, s1) * BigRational(count);
}

double g_coefficient(uint32_t m, uint64_t n, double c, uint32_t k, uint32_t s1) {
  return to_double(g_coefficient_exact(m, n, BigRational(c), k, s1));
}

double bicycle_union_bound(uint64_t n, uint32_t m, double c, uint32_t s_max) {
  if (s_max < 2) return 0.0;
  const BigRational p = clause_probability(n, m, BigRational(c));
  if (p == 0) return 0.0;
  // incremental stirling row (truncated at m), falling factorial and p power
  std::vector<BigCount> stir(m + 1, 0);  // S(s+1, k) for the current s
  std::vector<BigCount> kfact(m + 1, 1);
  std::vector<BigCount> choose(m + 1);
  for (uint32_t k = 0; k <= m; ++k) {
    choose[k] = binomial_coeff(m, k);
    for (uint32_t i = 2; i <= k; ++i) kfact[k] *= i;
  }
  // bootstrap to s = 2 (row a = 3)
  stir[0] = 1;
  uint32_t row = 0;
  auto advance_row = [&]() {
    ++row;
    for (uint32_t j = std::min(row, m); j >= 1; --j) {
      stir[j] = BigCount(j) * stir[j] + stir[j - 1];
    }
    stir[0] = 0;
  };
  while (row < 3) advance_row();
  BigCount ff = falling_factorial(n, 2);
  BigRational pw = pow_rational(p, 3);
  double total = 0.0;
  for (uint32_t s = 2; s <= s_max; ++s) {
    BigCount d = 0;
    for (uint32_t k = 1; k <= std::min(m, s + 1); ++k) {
      d += ((choose[k] * stir[k]) << k) * kfact[k];
    }
    BigCount count = (ff << s) * d * (BigCount(4) * s * s - 1);
    total += to_double(pw * BigRational(count));
    if (s == s_max) break;
    advance_row();
    ff *= (n >= s + 1) ? BigCount(n - s) : BigCount(0);
    pw *= p;
  }
  return total;
}

// Entropy sandwich for C(a,b). The lower-bound prefactor is
// sqrt(a / (8 b (a-b))); the often-quoted sqrt(1/a) is too large and the
// inequality fails with it already at (a,b) = (2,1).
bool binomial_bounds_check(uint32_t a, uint32_t b) {
  if (b < 1 || b > a) throw Error(Errc::DomainError, "need 1 <= b <= a");
  auto xlogx = [](double x, double ratio) { return x == 0.0 ? 0.0 : x * std::log(ratio); };
  const double da = a, db = b;
  double log_upper = xlogx(db, da / db) + xlogx(da - db, da / (da - db));
  double log_lower =
      a == b ? log_upper - 0.5 * std::log(da)
             : log_upper + 0.5 * std::log(da / (8.0 * db * (da - db)));
  double log_binom = std::log(to_double(binomial_coeff(a, b)));
  return log_lower <= log_binom && log_binom <= log_upper;
}

namespace {

// Flat list of snake tuples as clause-rank arrays, grouped by minimum rank.
struct SnakeIndex {
  uint32_t len = 0;  // ranks per snake (= s+1)
  std::vector<uint32_t> ranks;             // len entries per snake
  std::vector<std::vector<uint32_t>> by_min_rank;
};

void enumerate_pure_sequences(uint32_t m, uint32_t s1, std::vector<std::vector<Literal>>& out) {
  std::vector<Literal> seq;
  std::vector<uint32_t> cnt(2 * (m + 1), 0);
  auto rec = [&](auto&& self, uint32_t depth) -> void {
    if (depth == s1) {
      out.push_back(seq);
      return;
    }
    for (uint32_t v = 1; v <= m; ++v) {
      for (int neg = 0; neg < 2; ++neg) {
        if (cnt[2 * v + (neg ? 0 : 1)] > 0) continue;
        ++cnt[2 * v + neg];
        seq.push_back(ulit(v, neg != 0));
        self(self, depth + 1);
        seq.pop_back();
        --cnt[2 * v + neg];
      }
    }
  };
  rec(rec, 0);
}

SnakeIndex build_snake_index(uint64_t n, uint32_t m, uint32_t s, uint64_t max_index_size) {
  check_snake_length(s);
  BigCount total = tuple_count_core(n, m, s);
  if (total > max_index_size) {
    throw Error(Errc::IndexTooLarge, "snake index would exceed the configured cap");
  }
  const uint32_t t = (s + 1) / 2;
  const uint64_t N = clause_universe_size_u64(m, static_cast<uint32_t>(n));
  std::vector<std::vector<Literal>> vseqs;
  enumerate_pure_sequences(m, s + 1, vseqs);

  SnakeIndex index;
  index.len = s + 1;
  index.by_min_rank.resize(N);
  std::vector<uint32_t> atoms;
  std::vector<uint8_t> used(n + 1, 0);
  std::vector<uint32_t> ranks(s + 1);

  auto emit = [&](const std::vector<Literal>& w) {
    auto lit_at = [&](uint32_t r) -> Literal {
      if (r == 0 || r == s + 1) return w[t - 1].negation();
      return w[r - 1];
    };
    for (const auto& vs : vseqs) {
      uint32_t min_rank = UINT32_MAX;
      for (uint32_t r = 0; r <= s; ++r) {
        Clause12 c(vs[r], lit_at(r).negation(), lit_at(r + 1));
        ranks[r] = static_cast<uint32_t>(
            rank_of_clause(m, static_cast<uint32_t>(n), c));
        min_rank = std::min(min_rank, ranks[r]);
      }
      uint32_t id = static_cast<uint32_t>(index.ranks.size() / index.len);
      index.ranks.insert(index.ranks.end(), ranks.begin(), ranks.end());
      index.by_min_rank[min_rank].push_back(id);
    }
  };

  std::vector<Literal> w(s);
  auto rec = [&](auto&& self, uint32_t depth) -> void {
    if (depth == s) {
      emit(w);
      return;
    }
    for (uint32_t a = 1; a <= n; ++a) {
      if (used[a]) continue;
      used[a] = 1;
      for (int neg = 0; neg < 2; ++neg) {
        w[depth] = elit(a, neg != 0);
        self(self, depth + 1);
      }
      used[a] = 0;
    }
  };
  rec(rec, 0);
  return index;
}

}  // namespace

ExpectationReport monte_carlo_snake_count(uint64_t n, uint32_t m, double c, uint32_t s,
                                          uint64_t samples, uint64_t seed, uint32_t threads,
                                          uint64_t max_index_size) {
  if (samples < 1) throw Error(Errc::DomainError, "samples must be at least 1");
  SnakeIndex index = build_snake_index(n, m, s, max_index_size);
  const uint32_t nn = static_cast<uint32_t>(n);
  const uint64_t N = clause_universe_size_u64(m, nn);
  if (threads == 0) {
    threads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = static_cast<uint32_t>(std::min<uint64_t>(threads, samples));

  std::vector<double> sums(threads, 0.0), sumsqs(threads, 0.0);
  auto worker = [&](uint32_t tid) {
    std::vector<uint8_t> present(N, 0);
    double sum = 0.0, sumsq = 0.0;
    for (uint64_t k = tid; k < samples; k += threads) {
      Formula12 f = sample_binomial(m, nn, c, derive_seed(seed, k));
      std::vector<uint32_t> ranks;
      ranks.reserve(f.clauses.size());
      for (const auto& cl : f.clauses) {
        uint32_t r = static_cast<uint32_t>(rank_of_clause(m, nn, cl));
        ranks.push_back(r);
        present[r] = 1;
      }
      uint64_t count = 0;
      for (uint32_t r : ranks) {
        for (uint32_t id : index.by_min_rank[r]) {
          const uint32_t* sr = &index.ranks[uint64_t(id) * index.len];
          bool all = true;
          for (uint32_t i = 0; i < index.len; ++i) {
            if (!present[sr[i]]) {
              all = false;
              break;
            }
          }
          if (all) ++count;
        }
      }
      for (uint32_t r : ranks) present[r] = 0;
      double x = static_cast<double>(count);
      sum += x;
      sumsq += x * x;
    }
    sums[tid] = sum;
    sumsqs[tid] = sumsq;
  };
  std::vector<std::thread> pool;
  for (uint32_t tid = 1; tid < threads; ++tid) pool.emplace_back(worker, tid);
  worker(0);
  for (auto& th : pool) th.join();

  double sum = 0.0, sumsq = 0.0;
  for (uint32_t tid = 0; tid < threads; ++tid) {
    sum += sums[tid];
    sumsq += sumsqs[tid];
  }
  ExpectationReport rep;
  rep.n = n;
  rep.m = m;
  rep.c = c;
  rep.s = s;
  rep.samples = samples;
  rep.expected = expected_snakes(n, m, c, s);
  rep.empirical_mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double var = (sumsq - sum * rep.empirical_mean) / static_cast<double>(samples - 1);
    rep.empirical_stderr = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  }
  return rep;
}

}  // namespace qsat12
