#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsat12/evaluator.hpp"
#include "qsat12/formula.hpp"

namespace qsat12 {

// Falsity witness with a double point: s+1 = 2t clauses
// C_r = (v_r v !w_r v w_{r+1}), r = 0..s, with w_0 = w_{s+1} = !w_t.
struct SnakeCert {
  uint32_t t = 0;
  std::vector<Literal> w;  // w_1..w_s, s = 2t-1, strictly distinct atoms
  std::vector<Literal> v;  // v_0..v_s, pure
};

// Chain of s+1 >= 3 clauses with free endpoints u, vlit drawn from
// {w_1..w_s, !w_1..!w_s}, (u, vlit) != (!w_s, w_1).
struct BicycleCert {
  uint32_t s = 0;
  std::vector<Literal> w;  // w_1..w_s
  std::vector<Literal> v;  // v_0..v_s, pure
  Literal u, vlit;
};

constexpr uint64_t kDefaultSearchBudget = 50'000'000;

std::vector<Clause12> snake_clauses(const SnakeCert& sc);
std::vector<Clause12> bicycle_clauses(const BicycleCert& bc);

// True iff `clauses` is a sub-multiset of f's clauses and admits a
// decomposition satisfying every certificate invariant.
bool verify_snake(const std::vector<Clause12>& clauses, const Formula12& f);
bool verify_bicycle(const std::vector<Clause12>& clauses, const Formula12& f);

// Depth-first enumeration over literal chains embedded in f, with purity
// pruning and a node budget. Oracle-grade: exponential in max_len.
std::optional<SnakeCert> find_snake_bruteforce(const Formula12& f, uint32_t max_len,
                                               uint64_t node_budget = kDefaultSearchBudget);
std::optional<BicycleCert> find_bicycle_bruteforce(const Formula12& f, uint32_t max_len,
                                                   uint64_t node_budget = kDefaultSearchBudget);

// The contradictory implication cycle y =>* !y =>* y inside the witness
// core, as a cyclic clause sequence. The returned clauses alone are
// unsatisfiable as a 2-CNF and pure as a (1,2)-subformula.
std::vector<Clause12> extract_unsat_core_cycle(const FalsityWitness& w);

}  // namespace qsat12
