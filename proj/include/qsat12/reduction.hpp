#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsat12/formula.hpp"

namespace qsat12 {

// A 3-CNF over 1-based variables; literal sign is the negation flag.
struct Cnf3 {
  uint32_t vars = 0;
  std::vector<std::array<int32_t, 3>> clauses;  // nonzero signed literals
};

Cnf3 read_dimacs_cnf(std::istream& in);
Cnf3 read_dimacs_cnf(const std::string& text);

// The minimally unsatisfiable 2-CNF with nc+1 clauses over y_1..y_nc:
// (!y1 v !y2), (y_i v !y_{i+1}) for 1 <= i <= nc-1, (y_{nc-1} v y_nc).
// Requires nc >= 3; the construction is satisfiable at nc = 2.
Cnf2 psi(uint32_t nc);

// Satisfiability-to-falsity reduction: the output formula is false iff phi
// is satisfiable. Inputs with fewer than 3 clauses are padded by duplicating
// the last clause, which preserves satisfiability.
Formula12 reduce_3sat(const Cnf3& phi);

// Truth-table oracle, vars <= 24.
bool brute_sat(const Cnf3& phi);

}  // namespace qsat12
