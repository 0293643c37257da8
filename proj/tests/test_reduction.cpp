#include <doctest.h>

#include "oracles.hpp"
#include "qsat12/evaluator.hpp"
#include "qsat12/reduction.hpp"
#include "qsat12/rng.hpp"

using namespace qsat12;

namespace {

Cnf3 make_cnf(uint32_t vars, std::vector<std::array<int32_t, 3>> clauses) {
  Cnf3 phi;
  phi.vars = vars;
  phi.clauses = std::move(clauses);
  return phi;
}

Cnf3 random_cnf(uint32_t vars, uint32_t nclauses, uint64_t seed) {
  Rng rng(seed);
  Cnf3 phi;
  phi.vars = vars;
  for (uint32_t i = 0; i < nclauses; ++i) {
    std::array<int32_t, 3> cl;
    for (auto& lit : cl) {
      int32_t v = 1 + static_cast<int32_t>(rng.below(vars));
      lit = rng.below(2) ? -v : v;
    }
    phi.clauses.push_back(cl);
  }
  return phi;
}

Cnf3 contradiction8() {
  Cnf3 phi;
  phi.vars = 3;
  for (int mask = 0; mask < 8; ++mask) {
    phi.clauses.push_back({(mask & 1) ? -1 : 1, (mask & 2) ? -2 : 2, (mask & 4) ? -3 : 3});
  }
  return phi;
}

}  // namespace

TEST_CASE("the chain gadget is unsatisfiable and minimally so") {
  Cnf2 p3 = psi(3);
  REQUIRE(p3.clauses.size() == 4);
  CHECK(p3.clauses[0].first == elit(1, true));
  CHECK(p3.clauses[0].second == elit(2, true));
  CHECK(p3.clauses[3].first == elit(2));
  CHECK(p3.clauses[3].second == elit(3));
  CHECK_FALSE(sat_2cnf(p3));
  CHECK_FALSE(oracles::sat_2cnf_truthtable(p3));

  for (uint32_t nc = 3; nc <= 10; ++nc) {
    Cnf2 p = psi(nc);
    CHECK(p.clauses.size() == nc + 1);
    CHECK_FALSE(sat_2cnf(p));
    for (size_t drop = 0; drop < p.clauses.size(); ++drop) {
      Cnf2 sub = p;
      sub.clauses.erase(sub.clauses.begin() + drop);
      CHECK(sat_2cnf(sub));
    }
  }
}

TEST_CASE("the chain gadget needs at least 3 variables") {
  CHECK_THROWS_AS(psi(2), Error);
  CHECK_THROWS_AS(psi(0), Error);
}

TEST_CASE("dimacs cnf parsing") {
  Cnf3 phi = read_dimacs_cnf("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  CHECK(phi.vars == 3);
  REQUIRE(phi.clauses.size() == 2);
  CHECK(phi.clauses[0] == std::array<int32_t, 3>{1, -2, 3});
  CHECK_THROWS_AS(read_dimacs_cnf("p cnf 2 1\n1 -2 0\n"), Error);  // not 3-CNF
  CHECK_THROWS_AS(read_dimacs_cnf("1 2 3 0\n"), Error);            // missing header
}

TEST_CASE("reduction shape and size") {
  Cnf3 phi = random_cnf(5, 7, 1234);
  Formula12 out = reduce_3sat(phi);
  CHECK(out.m == phi.vars + 1);
  CHECK(out.n == phi.clauses.size());
  CHECK(out.clauses.size() == 3 * phi.clauses.size() + 1);
  CHECK_NOTHROW(validate(out));
  CHECK_THROWS_AS(reduce_3sat(make_cnf(3, {})), Error);
}

TEST_CASE("satisfiable input reduces to a false formula") {
  // (a v b v c) repeated: trivially satisfiable, padded internally
  Cnf3 phi = make_cnf(3, {{1, 2, 3}});
  CHECK(brute_sat(phi));
  CHECK_FALSE(evaluate(reduce_3sat(phi)));
}

TEST_CASE("unsatisfiable input reduces to a true formula") {
  Cnf3 phi = contradiction8();
  CHECK_FALSE(brute_sat(phi));
  CHECK(evaluate(reduce_3sat(phi)));
}

TEST_CASE("reduction equivalence on random instances") {
  for (int i = 0; i < 200; ++i) {
    uint64_t seed = derive_seed(246810, i);
    Rng rng(seed);
    uint32_t vars = 2 + static_cast<uint32_t>(rng.below(5));
    uint32_t ncl = 3 + static_cast<uint32_t>(rng.below(8));
    Cnf3 phi = random_cnf(vars, ncl, derive_seed(seed, 1));
    CHECK(brute_sat(phi) == !evaluate(reduce_3sat(phi)));
  }
}

TEST_CASE("brute force sat oracle basics") {
  CHECK(brute_sat(make_cnf(3, {{1, 2, 3}})));
  CHECK_FALSE(brute_sat(contradiction8()));
  CHECK(brute_sat(make_cnf(3, {})));
  Cnf3 huge;
  huge.vars = 25;
  CHECK_THROWS_AS(brute_sat(huge), Error);
}
