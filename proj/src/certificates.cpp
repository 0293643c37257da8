#include "qsat12/certificates.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <unordered_map>

namespace qsat12 {

namespace {

uint32_t code_of(const Literal& l) { return 2 * (l.var - 1) + (l.negated ? 1u : 0u); }

Literal lit_of_code(uint32_t code) { return elit(code / 2 + 1, (code & 1) != 0); }

uint64_t pair_key(uint32_t a, uint32_t b) {
  if (a > b) std::swap(a, b);
  return (uint64_t(a) << 32) | b;
}

std::array<uint32_t, 3> clause_key(const Clause12& c) {
  Clause12 k = c;
  k.canonicalize();
  return {k.u.var * 2 + (k.u.negated ? 1u : 0u), k.e1.var * 2 + (k.e1.negated ? 1u : 0u),
          k.e2.var * 2 + (k.e2.negated ? 1u : 0u)};
}

// Multiplicity counts per (uvar, polarity); a literal can be added iff its
// complement has count zero.
class PurityTracker {
 public:
  explicit PurityTracker(uint32_t m) : cnt_(2 * (m + 1), 0) {}

  bool can_add(const Literal& u) const { return cnt_[2 * u.var + (u.negated ? 0 : 1)] == 0; }
  void add(const Literal& u) { ++cnt_[2 * u.var + (u.negated ? 1 : 0)]; }
  void remove(const Literal& u) { --cnt_[2 * u.var + (u.negated ? 1 : 0)]; }

 private:
  std::vector<uint32_t> cnt_;
};

struct ChainArc {
  uint32_t to;
  Literal u;
};

struct Endpoint {
  uint32_t partner;  // literal code of the other existential literal
  Literal u;
};

struct SearchIndex {
  std::vector<std::vector<ChainArc>> adj;       // code(w_r) -> candidates for w_{r+1}
  std::vector<std::vector<Endpoint>> incident;  // code(l) -> clauses containing l
  std::unordered_map<uint64_t, std::vector<Literal>> by_pair;

  explicit SearchIndex(const Formula12& f) {
    adj.resize(2 * f.n);
    incident.resize(2 * f.n);
    for (const auto& c : f.clauses) {
      uint32_t a = code_of(c.e1), b = code_of(c.e2);
      // clause (u v !w_r v w_{r+1}) serves the chain in both orientations
      adj[a ^ 1].push_back({b, c.u});
      adj[b ^ 1].push_back({a, c.u});
      incident[a].push_back({b, c.u});
      incident[b].push_back({a, c.u});
      by_pair[pair_key(a, b)].push_back(c.u);
    }
  }
};

class Budget {
 public:
  explicit Budget(uint64_t n) : left_(n) {}
  void spend() {
    if (left_ == 0) throw Error(Errc::SearchBudgetExceeded, "certificate search budget exhausted");
    --left_;
  }

 private:
  uint64_t left_;
};

class SnakeSearch {
 public:
  SnakeSearch(const Formula12& f, uint64_t budget)
      : f_(f), index_(f), purity_(f.m), used_(f.n + 1, 0), budget_(budget) {}

  std::optional<SnakeCert> run(uint32_t max_len, uint32_t min_t = 2) {
    for (uint32_t t = std::max(2u, min_t); 2 * t <= max_len; ++t) {
      t_ = t;
      s_ = 2 * t - 1;
      for (uint32_t start = 0; start < 2 * f_.n; ++start) {
        if (index_.adj[start].empty()) continue;
        chain_.assign(1, start);
        used_[start / 2 + 1] = 1;
        if (dfs()) {
          used_[start / 2 + 1] = 0;
          return result_;
        }
        used_[start / 2 + 1] = 0;
      }
    }
    return std::nullopt;
  }

 private:
  bool dfs() {
    budget_.spend();
    if (chain_.size() == s_) return close();
    uint32_t from = chain_.back();
    for (const auto& arc : index_.adj[from]) {
      uint32_t atom = arc.to / 2 + 1;
      if (used_[atom] || !purity_.can_add(arc.u)) continue;
      used_[atom] = 1;
      chain_.push_back(arc.to);
      chain_u_.push_back(arc.u);
      purity_.add(arc.u);
      bool found = dfs();
      purity_.remove(arc.u);
      chain_u_.pop_back();
      chain_.pop_back();
      used_[atom] = 0;
      if (found) return true;
    }
    return false;
  }

  bool close() {
    // C_0 has pair {w_t, w_1}; C_s has pair {!w_s, !w_t}
    uint32_t w1 = chain_.front(), wt = chain_[t_ - 1], ws = chain_.back();
    auto it0 = index_.by_pair.find(pair_key(wt, w1));
    auto its = index_.by_pair.find(pair_key(ws ^ 1, wt ^ 1));
    if (it0 == index_.by_pair.end() || its == index_.by_pair.end()) return false;
    for (const auto& u0 : it0->second) {
      if (!purity_.can_add(u0)) continue;
      purity_.add(u0);
      for (const auto& us : its->second) {
        budget_.spend();
        if (!purity_.can_add(us)) continue;
        SnakeCert sc;
        sc.t = t_;
        for (uint32_t code : chain_) sc.w.push_back(lit_of_code(code));
        sc.v.push_back(u0);
        sc.v.insert(sc.v.end(), chain_u_.begin(), chain_u_.end());
        sc.v.push_back(us);
        result_ = std::move(sc);
        purity_.remove(u0);
        return true;
      }
      purity_.remove(u0);
    }
    return false;
  }

  const Formula12& f_;
  SearchIndex index_;
  PurityTracker purity_;
  std::vector<uint8_t> used_;
  std::vector<uint32_t> chain_;
  std::vector<Literal> chain_u_;
  Budget budget_;
  uint32_t t_ = 0, s_ = 0;
  std::optional<SnakeCert> result_;
};

class BicycleSearch {
 public:
  BicycleSearch(const Formula12& f, uint64_t budget)
      : f_(f), index_(f), purity_(f.m), used_(f.n + 1, 0), budget_(budget) {}

  std::optional<BicycleCert> run(uint32_t max_len, uint32_t min_s = 2) {
    for (uint32_t s = std::max(2u, min_s); s + 1 <= max_len; ++s) {
      s_ = s;
      for (uint32_t start = 0; start < 2 * f_.n; ++start) {
        chain_.assign(1, start);
        used_[start / 2 + 1] = 1;
        if (dfs()) {
          used_[start / 2 + 1] = 0;
          return result_;
        }
        used_[start / 2 + 1] = 0;
      }
    }
    return std::nullopt;
  }

 private:
  bool dfs() {
    budget_.spend();
    if (chain_.size() == s_) return close();
    uint32_t from = chain_.back();
    for (const auto& arc : index_.adj[from]) {
      uint32_t atom = arc.to / 2 + 1;
      if (used_[atom] || !purity_.can_add(arc.u)) continue;
      used_[atom] = 1;
      chain_.push_back(arc.to);
      chain_u_.push_back(arc.u);
      purity_.add(arc.u);
      bool found = dfs();
      purity_.remove(arc.u);
      chain_u_.pop_back();
      chain_.pop_back();
      used_[atom] = 0;
      if (found) return true;
    }
    return false;
  }

  bool close() {
    uint32_t w1 = chain_.front(), ws = chain_.back();
    for (const auto& e0 : index_.incident[w1]) {
      if (!used_[e0.partner / 2 + 1]) continue;  // u must come from the chain
      if (!purity_.can_add(e0.u)) continue;
      purity_.add(e0.u);
      for (const auto& es : index_.incident[ws ^ 1]) {
        budget_.spend();
        if (!used_[es.partner / 2 + 1]) continue;
        if (e0.partner == (ws ^ 1) && es.partner == w1) continue;  // excluded (u,v)
        if (!purity_.can_add(es.u)) continue;
        BicycleCert bc;
        bc.s = s_;
        for (uint32_t code : chain_) bc.w.push_back(lit_of_code(code));
        bc.v.push_back(e0.u);
        bc.v.insert(bc.v.end(), chain_u_.begin(), chain_u_.end());
        bc.v.push_back(es.u);
        bc.u = lit_of_code(e0.partner);
        bc.vlit = lit_of_code(es.partner);
        result_ = std::move(bc);
        purity_.remove(e0.u);
        return true;
      }
      purity_.remove(e0.u);
    }
    return false;
  }

  const Formula12& f_;
  SearchIndex index_;
  PurityTracker purity_;
  std::vector<uint8_t> used_;
  std::vector<uint32_t> chain_;
  std::vector<Literal> chain_u_;
  Budget budget_;
  uint32_t s_ = 0;
  std::optional<BicycleCert> result_;
};

void check_distinct_atoms(const std::vector<Literal>& w) {
  std::vector<uint32_t> atoms;
  for (const auto& l : w) atoms.push_back(l.var);
  std::sort(atoms.begin(), atoms.end());
  if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end()) {
    throw Error(Errc::InvalidCertificate, "existential atoms must be strictly distinct");
  }
}

}  // namespace

std::vector<Clause12> snake_clauses(const SnakeCert& sc) {
  const uint32_t t = sc.t;
  if (t < 2) throw Error(Errc::InvalidCertificate, "snake length must be at least 4");
  const uint32_t s = 2 * t - 1;
  if (sc.w.size() != s || sc.v.size() != s + 1) {
    throw Error(Errc::InvalidCertificate, "snake has s = 2t-1 chain literals and s+1 universal literals");
  }
  check_distinct_atoms(sc.w);
  if (!is_pure(sc.v)) throw Error(Errc::InvalidCertificate, "universal sequence is not pure");
  auto lit_at = [&](uint32_t r) -> Literal {
    if (r == 0 || r == s + 1) return sc.w[t - 1].negation();  // w_0 = w_{s+1} = !w_t
    return sc.w[r - 1];
  };
  std::vector<Clause12> out;
  out.reserve(s + 1);
  for (uint32_t r = 0; r <= s; ++r) {
    out.emplace_back(sc.v[r], lit_at(r).negation(), lit_at(r + 1));
  }
  return out;
}

std::vector<Clause12> bicycle_clauses(const BicycleCert& bc) {
  const uint32_t s = bc.s;
  if (s < 2) throw Error(Errc::InvalidCertificate, "bicycle length must be at least 3");
  if (bc.w.size() != s || bc.v.size() != s + 1) {
    throw Error(Errc::InvalidCertificate, "bicycle has s chain literals and s+1 universal literals");
  }
  check_distinct_atoms(bc.w);
  if (!is_pure(bc.v)) throw Error(Errc::InvalidCertificate, "universal sequence is not pure");
  auto in_chain = [&](const Literal& l) {
    for (const auto& w : bc.w) {
      if (w.var == l.var) return true;
    }
    return false;
  };
  if (!in_chain(bc.u) || !in_chain(bc.vlit)) {
    throw Error(Errc::InvalidCertificate, "endpoints must be drawn from the chain literals");
  }
  if (bc.u == bc.w.back().negation() && bc.vlit == bc.w.front()) {
    throw Error(Errc::InvalidCertificate, "endpoint pair (!w_s, w_1) is excluded");
  }
  if (bc.u.var == bc.w.front().var || bc.vlit.var == bc.w.back().var) {
    throw Error(Errc::InvalidCertificate, "endpoint collides with its clause partner");
  }
  std::vector<Clause12> out;
  out.reserve(s + 1);
  out.emplace_back(bc.v[0], bc.u, bc.w[0]);
  for (uint32_t r = 1; r < s; ++r) {
    out.emplace_back(bc.v[r], bc.w[r - 1].negation(), bc.w[r]);
  }
  out.emplace_back(bc.v[s], bc.w[s - 1].negation(), bc.vlit);
  return out;
}

namespace {

// Sub-multiset check plus decomposition search restricted to exactly the
// given clause set.
bool verify_common(const std::vector<Clause12>& clauses, const Formula12& f, bool snake) {
  if (clauses.empty()) return false;
  std::map<std::array<uint32_t, 3>, int> have;
  for (const auto& c : f.clauses) ++have[clause_key(c)];
  std::map<std::array<uint32_t, 3>, int> want;
  for (const auto& c : clauses) ++want[clause_key(c)];
  for (const auto& [k, cnt] : want) {
    if (cnt > 1) return false;  // certificates are sets of distinct clauses
    auto it = have.find(k);
    if (it == have.end() || it->second < cnt) return false;
  }
  const uint32_t len = static_cast<uint32_t>(clauses.size());
  if (snake && (len < 4 || len % 2 != 0)) return false;
  if (!snake && len < 3) return false;
  Formula12 sub;
  sub.m = f.m;
  sub.n = f.n;
  sub.clauses = clauses;
  try {
    validate(sub);
    // a decomposition of exactly this length uses len distinct literal
    // pairs inside a len-clause set, hence every clause
    if (snake) {
      SnakeSearch exact(sub, kDefaultSearchBudget);
      auto found = exact.run(len, len / 2);
      return found && 2 * found->t == len;
    }
    BicycleSearch exact(sub, kDefaultSearchBudget);
    auto found = exact.run(len, len - 1);
    return found && found->s + 1 == len;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

bool verify_snake(const std::vector<Clause12>& clauses, const Formula12& f) {
  return verify_common(clauses, f, true);
}

bool verify_bicycle(const std::vector<Clause12>& clauses, const Formula12& f) {
  return verify_common(clauses, f, false);
}

std::optional<SnakeCert> find_snake_bruteforce(const Formula12& f, uint32_t max_len,
                                               uint64_t node_budget) {
  validate(f);
  SnakeSearch search(f, node_budget);
  return search.run(max_len);
}

std::optional<BicycleCert> find_bicycle_bruteforce(const Formula12& f, uint32_t max_len,
                                                   uint64_t node_budget) {
  validate(f);
  BicycleSearch search(f, node_budget);
  return search.run(max_len);
}

std::vector<Clause12> extract_unsat_core_cycle(const FalsityWitness& w) {
  if (w.core.empty()) throw Error(Errc::InvalidWitness, "witness core is empty");
  uint32_t n = 0;
  for (const auto& c : w.core) {
    if (c.u.var < 1 || c.u.var > w.assignment.size()) {
      throw Error(Errc::InvalidWitness, "core clause references a universal variable outside the assignment");
    }
    bool uval = w.assignment.value(c.u.var);
    if (c.u.negated) uval = !uval;
    if (uval) throw Error(Errc::InvalidWitness, "core clause has a satisfied universal literal");
    n = std::max({n, c.e1.var, c.e2.var});
  }
  Cnf2 proj;
  proj.n = n;
  for (const auto& c : w.core) proj.clauses.emplace_back(c.e1, c.e2);
  uint32_t contradiction = 0;
  if (sat_2cnf(proj, &contradiction)) {
    throw Error(Errc::InvalidWitness, "witness core projection is satisfiable");
  }

  // arcs annotated with the clause they come from
  struct Arc {
    uint32_t to;
    uint32_t clause;
  };
  std::vector<std::vector<Arc>> adj(2 * n);
  for (uint32_t i = 0; i < w.core.size(); ++i) {
    const auto& c = w.core[i];
    adj[lit_node(c.e1.negation())].push_back({lit_node(c.e2), i});
    adj[lit_node(c.e2.negation())].push_back({lit_node(c.e1), i});
  }
  auto bfs_path = [&](uint32_t from, uint32_t to) {
    std::vector<int64_t> parent(2 * n, -1);
    std::vector<uint32_t> via(2 * n, 0);
    std::queue<uint32_t> q;
    parent[from] = from;
    q.push(from);
    while (!q.empty()) {
      uint32_t v = q.front();
      q.pop();
      if (v == to) break;
      for (const auto& arc : adj[v]) {
        if (parent[arc.to] >= 0) continue;
        parent[arc.to] = v;
        via[arc.to] = arc.clause;
        q.push(arc.to);
      }
    }
    std::vector<uint32_t> path;  // clause indices along from -> to
    if (parent[to] < 0) throw Error(Errc::InvalidWitness, "no implication path for contradiction variable");
    for (uint32_t v = to; v != from; v = static_cast<uint32_t>(parent[v])) {
      path.push_back(via[v]);
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  const uint32_t pos = 2 * (contradiction - 1);
  auto down = bfs_path(pos, pos ^ 1);   // y =>* !y
  auto up = bfs_path(pos ^ 1, pos);     // !y =>* y
  std::vector<Clause12> cycle;
  for (uint32_t i : down) cycle.push_back(w.core[i]);
  for (uint32_t i : up) cycle.push_back(w.core[i]);
  return cycle;
}

}  // namespace qsat12
