#include "qsat12/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "qsat12/rng.hpp"

namespace qsat12 {

BigCount clause_universe_size(uint32_t m, uint32_t n) {
  return BigCount(4) * m * n * (n - 1);
}

uint64_t clause_universe_size_u64(uint32_t m, uint32_t n) {
  return 4ULL * m * n * (uint64_t(n) - 1);
}

// Rank layout: (((uvar-1)*2 + uneg) * P + pair_index) * 4 + e1neg*2 + e2neg,
// where P = n(n-1)/2 and pair_index runs over atom pairs a < b.
namespace {

uint64_t pair_index(uint32_t n, uint32_t a, uint32_t b) {
  // a < b, both 1-based
  return uint64_t(a - 1) * n - uint64_t(a - 1) * a / 2 + (b - a - 1);
}

void pair_from_index(uint32_t n, uint64_t idx, uint32_t& a, uint32_t& b) {
  // invert the triangular layout; float guess plus integer fix-up
  double nn = static_cast<double>(n) - 0.5;
  double disc = nn * nn - 2.0 * static_cast<double>(idx);
  uint32_t guess = disc > 0 ? static_cast<uint32_t>(nn - std::sqrt(disc)) + 1 : n - 1;
  if (guess < 1) guess = 1;
  while (guess > 1 && pair_index(n, guess, guess + 1) > idx) --guess;
  while (guess < n - 1 && pair_index(n, guess + 1, guess + 2) <= idx) ++guess;
  a = guess;
  b = static_cast<uint32_t>(idx - pair_index(n, a, a + 1)) + a + 1;
}

}  // namespace

Clause12 clause_from_rank(uint32_t m, uint32_t n, uint64_t rank) {
  const uint64_t N = clause_universe_size_u64(m, n);
  if (rank >= N) throw Error(Errc::RankOutOfRange, "clause rank out of range");
  uint32_t e2neg = rank & 1;
  uint32_t e1neg = (rank >> 1) & 1;
  uint64_t rest = rank >> 2;
  const uint64_t P = uint64_t(n) * (n - 1) / 2;
  uint64_t pidx = rest % P;
  uint64_t uidx = rest / P;
  uint32_t a, b;
  pair_from_index(n, pidx, a, b);
  return Clause12(ulit(static_cast<uint32_t>(uidx / 2) + 1, (uidx & 1) != 0),
                  elit(a, e1neg != 0), elit(b, e2neg != 0));
}

uint64_t rank_of_clause(uint32_t m, uint32_t n, const Clause12& c) {
  Clause12 canon = c;
  canon.canonicalize();
  if (canon.u.var > m || canon.e2.var > n) {
    throw Error(Errc::OutOfRangeVar, "clause variable outside (m, n)");
  }
  const uint64_t P = uint64_t(n) * (n - 1) / 2;
  uint64_t uidx = uint64_t(canon.u.var - 1) * 2 + (canon.u.negated ? 1 : 0);
  uint64_t pidx = pair_index(n, canon.e1.var, canon.e2.var);
  return ((uidx * P + pidx) << 2) | (uint64_t(canon.e1.negated) << 1) |
         uint64_t(canon.e2.negated);
}

namespace {

Formula12 formula_from_ranks(uint32_t m, uint32_t n, std::vector<uint64_t>& ranks) {
  std::sort(ranks.begin(), ranks.end());
  Formula12 f;
  f.m = m;
  f.n = n;
  f.clauses.reserve(ranks.size());
  for (uint64_t r : ranks) f.clauses.push_back(clause_from_rank(m, n, r));
  return f;
}

}  // namespace

Formula12 sample_uniform(uint32_t m, uint32_t n, uint64_t L, uint64_t seed) {
  const uint64_t N = clause_universe_size_u64(m, n);
  if (L > N) throw Error(Errc::LTooLarge, "L exceeds the clause universe size");
  Rng rng(seed);
  std::vector<uint64_t> ranks;
  ranks.reserve(L);
  if (L * 2 <= N) {
    // rejection on ranks; near-free in the L << N regime
    std::unordered_set<uint64_t> chosen;
    chosen.reserve(L * 2);
    while (chosen.size() < L) {
      uint64_t r = rng.below(N);
      if (chosen.insert(r).second) ranks.push_back(r);
    }
  } else {
    // partial Fisher-Yates over the full rank vector
    std::vector<uint64_t> all(N);
    std::iota(all.begin(), all.end(), 0);
    for (uint64_t i = 0; i < L; ++i) {
      uint64_t j = i + rng.below(N - i);
      std::swap(all[i], all[j]);
      ranks.push_back(all[i]);
    }
  }
  return formula_from_ranks(m, n, ranks);
}

Formula12 sample_binomial(uint32_t m, uint32_t n, double c, uint64_t seed) {
  const uint64_t N = clause_universe_size_u64(m, n);
  const double p = c / (4.0 * m * n);
  if (!(p >= 0.0) || p > 1.0) {
    throw Error(Errc::ProbabilityOutOfRange, "c/(4mn) must lie in [0,1]");
  }
  Rng rng(seed);
  std::vector<uint64_t> ranks;
  if (p >= 1.0) {
    ranks.resize(N);
    std::iota(ranks.begin(), ranks.end(), 0);
  } else if (p > 0.0) {
    // geometric gaps between successive successes: includes each trial
    // independently with probability p in O(Np) expected time
    const double log1mp = std::log1p(-p);
    double pos = -1.0;
    for (;;) {
      pos += 1.0 + std::floor(std::log(rng.next_double_open()) / log1mp);
      if (pos >= static_cast<double>(N)) break;
      ranks.push_back(static_cast<uint64_t>(pos));
    }
  }
  return formula_from_ranks(m, n, ranks);
}

Formula12 sample(const GenConfig& cfg) {
  if (const auto* u = std::get_if<UniformL>(&cfg.model)) {
    return sample_uniform(cfg.m, cfg.n, u->L, cfg.seed);
  }
  return sample_binomial(cfg.m, cfg.n, std::get<Binomial>(cfg.model).c, cfg.seed);
}

}  // namespace qsat12
