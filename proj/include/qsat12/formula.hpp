#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsat12/error.hpp"

namespace qsat12 {

enum class Block : uint8_t { Universal, Existential };

// Universal and existential variables live in separate 1-based index spaces;
// the QDIMACS wire format maps existential j to m+j.
struct Literal {
  uint32_t var = 0;
  bool negated = false;
  Block block = Block::Existential;

  Literal() = default;
  Literal(uint32_t v, bool neg, Block b) : var(v), negated(neg), block(b) {}

  Literal negation() const { return Literal(var, !negated, block); }

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal ulit(uint32_t var, bool negated = false) {
  return Literal(var, negated, Block::Universal);
}
inline Literal elit(uint32_t var, bool negated = false) {
  return Literal(var, negated, Block::Existential);
}

// One (1,2)-clause: a universal literal and two existential literals over
// distinct atoms. Canonical form orders the existential pair by variable.
struct Clause12 {
  Literal u;
  Literal e1, e2;

  Clause12() = default;
  Clause12(Literal universal, Literal a, Literal b) : u(universal), e1(a), e2(b) {
    canonicalize();
  }

  void canonicalize() {
    if (e1.var > e2.var) std::swap(e1, e2);
  }

  friend bool operator==(const Clause12&, const Clause12&) = default;
};

struct Formula12 {
  uint32_t m = 0;  // universal variables x_1..x_m
  uint32_t n = 0;  // existential variables y_1..y_n
  std::vector<Clause12> clauses;
};

// A plain existential 2-CNF, as obtained after instantiating the universal
// block or projecting it away.
struct Cnf2 {
  uint32_t n = 0;
  std::vector<std::pair<Literal, Literal>> clauses;
};

struct UniversalAssignment {
  std::vector<uint8_t> bits;  // bits[i] = value of x_{i+1}

  bool value(uint32_t var) const { return bits[var - 1] != 0; }
  size_t size() const { return bits.size(); }
};

// Throws on the first violated Clause12/Formula12 invariant.
void validate(const Formula12& f);

// True iff no universal variable occurs both negated and unnegated.
bool is_pure(const std::vector<Literal>& universal_lits);
bool is_pure_formula(const Formula12& f);

// The 2-CNF obtained by dropping the universal literal of every clause
// (duplicates kept).
Cnf2 existential_projection(const Formula12& f);

Formula12 read_qdimacs(const std::string& text);
Formula12 read_qdimacs(std::istream& in);
std::string write_qdimacs(const Formula12& f);

}  // namespace qsat12
