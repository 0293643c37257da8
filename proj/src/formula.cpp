#include "qsat12/formula.hpp"

#include <sstream>
#include <unordered_set>

namespace qsat12 {

namespace {

void check_clause(const Clause12& c, uint32_t m, uint32_t n) {
  if (c.u.block != Block::Universal || c.e1.block != Block::Existential ||
      c.e2.block != Block::Existential) {
    throw Error(Errc::WrongBlockShape,
                "clause must have one universal and two existential literals");
  }
  if (c.u.var < 1 || c.u.var > m) {
    throw Error(Errc::OutOfRangeVar, "universal variable out of range");
  }
  if (c.e1.var < 1 || c.e1.var > n || c.e2.var < 1 || c.e2.var > n) {
    throw Error(Errc::OutOfRangeVar, "existential variable out of range");
  }
  if (c.e1.var == c.e2.var) {
    throw Error(Errc::DuplicateExistentialAtomInClause,
                "existential atoms within a clause must be distinct");
  }
}

}  // namespace

void validate(const Formula12& f) {
  for (const auto& c : f.clauses) check_clause(c, f.m, f.n);
}

bool is_pure(const std::vector<Literal>& universal_lits) {
  std::unordered_set<uint64_t> seen;
  for (const auto& l : universal_lits) {
    seen.insert(uint64_t(l.var) * 2 + (l.negated ? 1 : 0));
  }
  for (const auto& l : universal_lits) {
    if (seen.count(uint64_t(l.var) * 2 + (l.negated ? 0 : 1))) return false;
  }
  return true;
}

bool is_pure_formula(const Formula12& f) {
  std::vector<Literal> lits;
  lits.reserve(f.clauses.size());
  for (const auto& c : f.clauses) lits.push_back(c.u);
  return is_pure(lits);
}

Cnf2 existential_projection(const Formula12& f) {
  Cnf2 g;
  g.n = f.n;
  g.clauses.reserve(f.clauses.size());
  for (const auto& c : f.clauses) g.clauses.emplace_back(c.e1, c.e2);
  return g;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

Formula12 read_qdimacs(std::istream& in) {
  std::string line;
  int lineno = 0;
  long nvars = -1, nclauses = -1;
  uint32_t m = 0, n = 0;
  bool have_a = false, have_e = false;
  Formula12 f;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> nvars >> nclauses) || fmt != "cnf" || nvars < 0 || nclauses < 0) {
        parse_fail(lineno, "malformed problem line");
      }
      continue;
    }
    if (nvars < 0) parse_fail(lineno, "clause or quantifier line before problem line");
    if (tok == "a") {
      if (have_a) parse_fail(lineno, "duplicate a-line");
      long v, prev = 0;
      while (ls >> v && v != 0) {
        if (v != prev + 1) parse_fail(lineno, "a-line must list 1..m in order");
        prev = v;
      }
      if (v != 0) parse_fail(lineno, "a-line not zero-terminated");
      m = static_cast<uint32_t>(prev);
      have_a = true;
      continue;
    }
    if (tok == "e") {
      if (!have_a) parse_fail(lineno, "e-line before a-line");
      if (have_e) parse_fail(lineno, "duplicate e-line");
      long v, prev = m;
      while (ls >> v && v != 0) {
        if (v != prev + 1) parse_fail(lineno, "e-line must list m+1..m+n in order");
        prev = v;
      }
      if (v != 0) parse_fail(lineno, "e-line not zero-terminated");
      n = static_cast<uint32_t>(prev - m);
      have_e = true;
      if (static_cast<long>(m) + n != nvars) parse_fail(lineno, "quantifier blocks do not cover header variable count");
      continue;
    }
    // clause line
    if (!have_e) parse_fail(lineno, "clause before quantifier prefix");
    std::istringstream cs(line);
    std::vector<long> lits;
    long v;
    bool terminated = false;
    while (cs >> v) {
      if (v == 0) {
        terminated = true;
        break;
      }
      lits.push_back(v);
    }
    if (!terminated) {
      if (!cs.eof()) parse_fail(lineno, "unreadable literal in clause");
      parse_fail(lineno, "clause not zero-terminated");
    }
    if (lits.size() != 3) {
      throw Error(Errc::ShapeError, "line " + std::to_string(lineno) +
                                        ": clause must have exactly three literals");
    }
    int n_univ = 0;
    Literal u, es[2];
    int ne = 0;
    for (long lit : lits) {
      long a = lit < 0 ? -lit : lit;
      if (a < 1 || a > nvars) parse_fail(lineno, "literal out of range");
      if (a <= m) {
        u = ulit(static_cast<uint32_t>(a), lit < 0);
        ++n_univ;
      } else {
        if (ne < 2) es[ne] = elit(static_cast<uint32_t>(a - m), lit < 0);
        ++ne;
      }
    }
    if (n_univ != 1 || ne != 2) {
      throw Error(Errc::ShapeError, "line " + std::to_string(lineno) +
                                        ": clause is not (1,2)-shaped");
    }
    f.clauses.emplace_back(u, es[0], es[1]);
  }
  if (nvars < 0) throw Error(Errc::ParseError, "missing problem line");
  if (!have_a || !have_e) throw Error(Errc::ParseError, "missing quantifier prefix");
  if (static_cast<long>(f.clauses.size()) != nclauses) {
    throw Error(Errc::ParseError, "clause count does not match header");
  }
  f.m = m;
  f.n = n;
  validate(f);
  return f;
}

Formula12 read_qdimacs(const std::string& text) {
  std::istringstream in(text);
  return read_qdimacs(in);
}

std::string write_qdimacs(const Formula12& f) {
  std::ostringstream out;
  out << "p cnf " << (f.m + f.n) << ' ' << f.clauses.size() << '\n';
  out << "a";
  for (uint32_t i = 1; i <= f.m; ++i) out << ' ' << i;
  out << " 0\n";
  out << "e";
  for (uint32_t j = 1; j <= f.n; ++j) out << ' ' << (f.m + j);
  out << " 0\n";
  for (const auto& c : f.clauses) {
    long u = static_cast<long>(c.u.var) * (c.u.negated ? -1 : 1);
    long a = static_cast<long>(f.m + c.e1.var) * (c.e1.negated ? -1 : 1);
    long b = static_cast<long>(f.m + c.e2.var) * (c.e2.negated ? -1 : 1);
    out << u << ' ' << a << ' ' << b << " 0\n";
  }
  return out.str();
}

}  // namespace qsat12
