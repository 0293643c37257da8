#include "qsat12/evaluator.hpp"

#include <algorithm>
#include <cstring>

namespace qsat12 {

ImplicationDigraph build_implication_digraph(const Cnf2& g) {
  ImplicationDigraph d;
  d.n = g.n;
  d.arcs.reserve(2 * g.clauses.size());
  for (const auto& [a, b] : g.clauses) {
    d.arcs.emplace_back(lit_node(a.negation()), lit_node(b));
    d.arcs.emplace_back(lit_node(b.negation()), lit_node(a));
  }
  return d;
}

namespace {

// Iterative Tarjan over the implication digraph with reusable buffers; one
// instance per evaluation, rebuilt per universal assignment.
class TwoSatScratch {
 public:
  // arcs given as (from, to) node pairs; nodes in [0, 2n)
  bool solve(uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& arcs,
             uint32_t* contradiction) {
    const uint32_t nodes = 2 * n;
    head_.assign(nodes + 1, 0);
    for (const auto& [from, to] : arcs) ++head_[from + 1];
    for (uint32_t i = 0; i < nodes; ++i) head_[i + 1] += head_[i];
    adj_.resize(arcs.size());
    cursor_.assign(head_.begin(), head_.end() - 1);
    for (const auto& [from, to] : arcs) adj_[cursor_[from]++] = to;

    index_.assign(nodes, kUnvisited);
    low_.assign(nodes, 0);
    comp_.assign(nodes, kUnvisited);
    on_stack_.assign(nodes, 0);
    stack_.clear();
    frames_.clear();
    next_index_ = 0;
    next_comp_ = 0;

    for (uint32_t root = 0; root < nodes; ++root) {
      if (index_[root] != kUnvisited) continue;
      strongconnect(root);
    }
    if (contradiction) *contradiction = 0;
    bool sat = true;
    for (uint32_t v = 0; v < n; ++v) {
      if (comp_[2 * v] == comp_[2 * v + 1]) {
        sat = false;
        if (contradiction) {
          *contradiction = v + 1;  // smallest index wins
          return false;
        }
        return false;
      }
    }
    return sat;
  }

 private:
  static constexpr uint32_t kUnvisited = 0xffffffffu;

  void strongconnect(uint32_t root) {
    frames_.push_back({root, head_[root]});
    index_[root] = low_[root] = next_index_++;
    stack_.push_back(root);
    on_stack_[root] = 1;
    while (!frames_.empty()) {
      auto& [v, it] = frames_.back();
      if (it < head_[v + 1]) {
        uint32_t w = adj_[it++];
        if (index_[w] == kUnvisited) {
          index_[w] = low_[w] = next_index_++;
          stack_.push_back(w);
          on_stack_[w] = 1;
          frames_.push_back({w, head_[w]});
        } else if (on_stack_[w]) {
          low_[v] = std::min(low_[v], index_[w]);
        }
      } else {
        if (low_[v] == index_[v]) {
          uint32_t w;
          do {
            w = stack_.back();
            stack_.pop_back();
            on_stack_[w] = 0;
            comp_[w] = next_comp_;
          } while (w != v);
          ++next_comp_;
        }
        uint32_t done = v;
        frames_.pop_back();
        if (!frames_.empty()) {
          auto& [parent, pit] = frames_.back();
          low_[parent] = std::min(low_[parent], low_[done]);
        }
      }
    }
  }

  std::vector<uint32_t> head_, adj_, cursor_;
  std::vector<uint32_t> index_, low_, comp_;
  std::vector<uint8_t> on_stack_;
  std::vector<uint32_t> stack_;
  std::vector<std::pair<uint32_t, uint32_t>> frames_;
  uint32_t next_index_ = 0;
  uint32_t next_comp_ = 0;
};

bool universal_literal_false(const Clause12& c, uint64_t bits) {
  bool value = (bits >> (c.u.var - 1)) & 1;
  return c.u.negated ? value : !value;
}

void gray_assignment(uint64_t code, uint32_t m, UniversalAssignment& a) {
  a.bits.resize(m);
  for (uint32_t i = 0; i < m; ++i) a.bits[i] = (code >> i) & 1;
}

}  // namespace

Cnf2 instantiate(const Formula12& f, const UniversalAssignment& a) {
  if (a.size() != f.m) {
    throw Error(Errc::AssignmentLengthMismatch, "assignment length must equal m");
  }
  uint64_t bits = 0;
  for (uint32_t i = 0; i < f.m; ++i) {
    if (a.bits[i]) bits |= (1ULL << i);
  }
  Cnf2 g;
  g.n = f.n;
  for (const auto& c : f.clauses) {
    if (universal_literal_false(c, bits)) g.clauses.emplace_back(c.e1, c.e2);
  }
  return g;
}

bool sat_2cnf(const Cnf2& g, uint32_t* contradiction) {
  TwoSatScratch scratch;
  auto d = build_implication_digraph(g);
  return scratch.solve(g.n, d.arcs, contradiction);
}

namespace {

template <typename OnFalse>
bool evaluate_impl(const Formula12& f, uint32_t m_cap, OnFalse&& on_false) {
  validate(f);
  if (f.m > m_cap || f.m >= 63) {
    throw Error(Errc::UniversalBlockTooLarge, "universal block exceeds the 2^m cap");
  }
  TwoSatScratch scratch;
  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  const uint64_t total = 1ULL << f.m;
  for (uint64_t i = 0; i < total; ++i) {
    const uint64_t bits = i ^ (i >> 1);  // Gray order
    arcs.clear();
    for (const auto& c : f.clauses) {
      if (universal_literal_false(c, bits)) {
        arcs.emplace_back(lit_node(c.e1.negation()), lit_node(c.e2));
        arcs.emplace_back(lit_node(c.e2.negation()), lit_node(c.e1));
      }
    }
    uint32_t contradiction = 0;
    if (!scratch.solve(f.n, arcs, &contradiction)) {
      on_false(bits, contradiction);
      return false;
    }
  }
  return true;
}

}  // namespace

bool evaluate(const Formula12& f, uint32_t m_cap) {
  return evaluate_impl(f, m_cap, [](uint64_t, uint32_t) {});
}

std::optional<FalsityWitness> find_falsifying(const Formula12& f, uint32_t m_cap) {
  std::optional<FalsityWitness> witness;
  bool value = evaluate_impl(f, m_cap, [&](uint64_t bits, uint32_t contradiction) {
    FalsityWitness w;
    gray_assignment(bits, f.m, w.assignment);
    for (size_t i = 0; i < f.clauses.size(); ++i) {
      if (universal_literal_false(f.clauses[i], bits)) {
        w.core.push_back(f.clauses[i]);
        w.core_indices.push_back(i);
      }
    }
    w.contradiction_var = contradiction;
    witness = std::move(w);
  });
  (void)value;
  return witness;
}

bool naive_evaluate(const Formula12& f) {
  validate(f);
  if (f.m + f.n > 24) {
    throw Error(Errc::InstanceTooLarge, "naive evaluation capped at m+n <= 24");
  }
  const uint64_t xs = 1ULL << f.m;
  const uint64_t ys = 1ULL << f.n;
  for (uint64_t x = 0; x < xs; ++x) {
    bool exists = false;
    for (uint64_t y = 0; y < ys && !exists; ++y) {
      bool all = true;
      for (const auto& c : f.clauses) {
        bool uval = (x >> (c.u.var - 1)) & 1;
        if (c.u.negated) uval = !uval;
        if (uval) continue;
        bool v1 = (y >> (c.e1.var - 1)) & 1;
        if (c.e1.negated) v1 = !v1;
        if (v1) continue;
        bool v2 = (y >> (c.e2.var - 1)) & 1;
        if (c.e2.negated) v2 = !v2;
        if (!v2) {
          all = false;
          break;
        }
      }
      exists = all;
    }
    if (!exists) return false;
  }
  return true;
}

}  // namespace qsat12
