#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsat12/formula.hpp"

namespace qsat12 {

// 2n-node digraph over existential literals; arcs !a -> b and !b -> a per
// 2-clause (a v b). Node encoding: 2*(var-1) + negated.
struct ImplicationDigraph {
  uint32_t n = 0;
  std::vector<std::pair<uint32_t, uint32_t>> arcs;
};

ImplicationDigraph build_implication_digraph(const Cnf2& g);

inline uint32_t lit_node(const Literal& l) {
  return 2 * (l.var - 1) + (l.negated ? 1u : 0u);
}

struct FalsityWitness {
  UniversalAssignment assignment;
  std::vector<Clause12> core;         // clauses whose universal literal is falsified
  std::vector<size_t> core_indices;   // their positions in the original formula
  uint32_t contradiction_var = 0;     // y with y and !y in one SCC
};

constexpr uint32_t kDefaultUniversalCap = 30;

// The 2-CNF left after fixing the universal block: clauses whose universal
// literal evaluates false keep their existential pair, the rest vanish.
Cnf2 instantiate(const Formula12& f, const UniversalAssignment& a);

// Linear-time 2-SAT via strongly connected components. When unsatisfiable
// and `contradiction` is given, reports the smallest variable sharing a
// component with its negation.
bool sat_2cnf(const Cnf2& g, uint32_t* contradiction = nullptr);

// Exhausts universal assignments in Gray-code order with early exit.
bool evaluate(const Formula12& f, uint32_t m_cap = kDefaultUniversalCap);

std::optional<FalsityWitness> find_falsifying(const Formula12& f,
                                              uint32_t m_cap = kDefaultUniversalCap);

// Independent oracle: full truth table over X and Y, m+n <= 24.
bool naive_evaluate(const Formula12& f);

}  // namespace qsat12
