#include "qsat12/reduction.hpp"

#include <sstream>

namespace qsat12 {

Cnf3 read_dimacs_cnf(std::istream& in) {
  std::string line;
  int lineno = 0;
  long nvars = -1, nclauses = -1;
  Cnf3 phi;
  std::vector<int32_t> pending;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> nvars >> nclauses) || fmt != "cnf" || nvars < 0 || nclauses < 0) {
        throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": malformed problem line");
      }
      continue;
    }
    if (nvars < 0) {
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": clause before problem line");
    }
    std::istringstream cs(line);
    long v;
    while (cs >> v) {
      if (v == 0) {
        if (pending.size() != 3) {
          throw Error(Errc::ShapeError, "line " + std::to_string(lineno) + ": clause is not 3-CNF");
        }
        phi.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        long a = v < 0 ? -v : v;
        if (a > nvars) {
          throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": literal out of range");
        }
        pending.push_back(static_cast<int32_t>(v));
      }
    }
  }
  if (nvars < 0) throw Error(Errc::ParseError, "missing problem line");
  if (!pending.empty()) throw Error(Errc::ParseError, "unterminated clause");
  if (static_cast<long>(phi.clauses.size()) != nclauses) {
    throw Error(Errc::ParseError, "clause count does not match header");
  }
  phi.vars = static_cast<uint32_t>(nvars);
  return phi;
}

Cnf3 read_dimacs_cnf(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs_cnf(in);
}

Cnf2 psi(uint32_t nc) {
  if (nc < 3) {
    throw Error(Errc::TooFewClauses,
                "psi needs at least 3 clauses; the 2-clause instance is satisfiable");
  }
  Cnf2 out;
  out.n = nc;
  out.clauses.emplace_back(elit(1, true), elit(2, true));  // psi_0
  for (uint32_t i = 1; i <= nc - 1; ++i) {
    out.clauses.emplace_back(elit(i), elit(i + 1, true));  // psi_i
  }
  out.clauses.emplace_back(elit(nc - 1), elit(nc));  // psi_nc
  return out;
}

namespace {

// psi_i as an existential pair, matching the layout produced by psi()
std::pair<Literal, Literal> psi_clause(uint32_t i, uint32_t nc) {
  if (i == 0) return {elit(1, true), elit(2, true)};
  if (i < nc) return {elit(i), elit(i + 1, true)};
  return {elit(nc - 1), elit(nc)};
}

}  // namespace

Formula12 reduce_3sat(const Cnf3& phi) {
  if (phi.clauses.empty()) throw Error(Errc::EmptyInput, "3-CNF input has no clauses");
  Cnf3 padded = phi;
  while (padded.clauses.size() < 3) padded.clauses.push_back(padded.clauses.back());

  const uint32_t nc = static_cast<uint32_t>(padded.clauses.size());
  Formula12 out;
  out.m = padded.vars + 1;  // fresh x_1; input variables shift to 2..m
  out.n = nc;
  out.clauses.reserve(3 * nc + 1);
  {
    auto [a, b] = psi_clause(0, nc);
    out.clauses.emplace_back(ulit(1), a, b);  // x_1 v psi_0
  }
  for (uint32_t i = 1; i <= nc; ++i) {
    auto [a, b] = psi_clause(i, nc);
    for (int32_t lit : padded.clauses[i - 1]) {
      uint32_t var = static_cast<uint32_t>(lit < 0 ? -lit : lit) + 1;
      out.clauses.emplace_back(ulit(var, lit > 0), a, b);  // !l_{i,j} v psi_i
    }
  }
  validate(out);
  return out;
}

bool brute_sat(const Cnf3& phi) {
  if (phi.vars > 24) throw Error(Errc::InstanceTooLarge, "brute_sat capped at 24 variables");
  const uint64_t total = 1ULL << phi.vars;
  for (uint64_t a = 0; a < total; ++a) {
    bool all = true;
    for (const auto& cl : phi.clauses) {
      bool sat = false;
      for (int32_t lit : cl) {
        uint32_t var = static_cast<uint32_t>(lit < 0 ? -lit : lit);
        bool val = (a >> (var - 1)) & 1;
        if (lit < 0) val = !val;
        if (val) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace qsat12
