#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qsat12/certificates.hpp"
#include "qsat12/generator.hpp"
#include "qsat12/rng.hpp"

using namespace qsat12;

namespace {

SnakeCert example_snake() {
  SnakeCert sc;
  sc.t = 2;
  sc.w = {elit(1), elit(2), elit(3)};
  sc.v = {ulit(1), ulit(1), ulit(1), ulit(1)};
  return sc;
}

Formula12 wrap(uint32_t m, uint32_t n, std::vector<Clause12> cs) {
  Formula12 f;
  f.m = m;
  f.n = n;
  f.clauses = std::move(cs);
  return f;
}

}  // namespace

TEST_CASE("snake clause expansion matches the direct definition") {
  auto clauses = snake_clauses(example_snake());
  // endpoints w_0 = w_4 = !w_2 = !y2
  std::vector<Clause12> expected = {
      Clause12(ulit(1), elit(2), elit(1)),          // v0 v !w0 v w1 = x1 v y2 v y1
      Clause12(ulit(1), elit(1, true), elit(2)),    // x1 v !y1 v y2
      Clause12(ulit(1), elit(2, true), elit(3)),    // x1 v !y2 v y3
      Clause12(ulit(1), elit(3, true), elit(2, true))};  // x1 v !y3 v !y2
  CHECK(clauses == expected);
}

TEST_CASE("snake projection is unsatisfiable") {
  Formula12 f = wrap(1, 3, snake_clauses(example_snake()));
  CHECK_FALSE(sat_2cnf(existential_projection(f)));
  CHECK_FALSE(evaluate(f));
}

TEST_CASE("degenerate snake certificates are rejected") {
  SnakeCert bad = example_snake();
  bad.t = 1;
  bad.w = {elit(1)};
  bad.v = {ulit(1), ulit(1)};
  CHECK_THROWS_AS(snake_clauses(bad), Error);

  SnakeCert impure = example_snake();
  impure.v[1] = ulit(1, true);
  CHECK_THROWS_AS(snake_clauses(impure), Error);

  SnakeCert dup = example_snake();
  dup.w[2] = elit(1, true);  // repeated atom
  CHECK_THROWS_AS(snake_clauses(dup), Error);
}

TEST_CASE("verify_snake round trips and rejects corruption") {
  auto clauses = snake_clauses(example_snake());
  Formula12 f = wrap(2, 4, clauses);
  f.clauses.push_back(Clause12(ulit(2), elit(1), elit(4)));
  CHECK(verify_snake(clauses, f));

  auto broken = clauses;
  broken[1].u = ulit(1, true);  // break purity
  Formula12 f2 = wrap(2, 4, broken);
  CHECK_FALSE(verify_snake(broken, f2));

  // not a sub-multiset of the formula
  CHECK_FALSE(verify_snake(clauses, wrap(2, 4, {clauses[0], clauses[1]})));
}

TEST_CASE("bicycle certificates honour the endpoint exclusion") {
  BicycleCert bc;
  bc.s = 2;
  bc.w = {elit(1), elit(2)};
  bc.v = {ulit(1), ulit(1), ulit(1)};
  bc.u = elit(2);
  bc.vlit = elit(1);
  auto clauses = bicycle_clauses(bc);
  CHECK(clauses.size() == 3);
  Formula12 f = wrap(1, 2, clauses);
  CHECK(verify_bicycle(clauses, f));

  BicycleCert excluded = bc;
  excluded.u = elit(2, true);  // (!w_s, w_1)
  excluded.vlit = elit(1);
  CHECK_THROWS_AS(bicycle_clauses(excluded), Error);

  // the excluded shape's clause multiset, built by hand, must not verify
  std::vector<Clause12> cycle = {
      Clause12(ulit(1), elit(2, true), elit(1)),
      Clause12(ulit(1), elit(1, true), elit(2)),
      Clause12(ulit(1), elit(2, true), elit(1))};
  CHECK_FALSE(verify_bicycle(cycle, wrap(1, 2, cycle)));
}

TEST_CASE("brute-force snake search finds a planted snake") {
  Formula12 f = wrap(1, 3, snake_clauses(example_snake()));
  auto found = find_snake_bruteforce(f, 4);
  REQUIRE(found.has_value());
  CHECK(verify_snake(snake_clauses(*found), f));
}

TEST_CASE("satisfiable formulas admit no bicycle") {
  Formula12 f = wrap(1, 3,
                     {Clause12(ulit(1), elit(1), elit(2)),
                      Clause12(ulit(1, true), elit(2), elit(3))});
  REQUIRE(evaluate(f));
  CHECK_FALSE(find_bicycle_bruteforce(f, 10).has_value());
  CHECK_FALSE(find_snake_bruteforce(f, 10).has_value());
}

TEST_CASE("search honours its node budget") {
  Formula12 f = sample_uniform(3, 12, 40, 5);
  CHECK_THROWS_AS(find_bicycle_bruteforce(f, 12, 10), Error);
}

TEST_CASE("every false formula yields a bicycle at desk scale") {
  int false_count = 0;
  for (int i = 0; false_count < 30 && i < 400; ++i) {
    Formula12 f = sample_binomial(3, 12, 3.0, derive_seed(606, i));
    if (evaluate(f)) continue;
    ++false_count;
    auto bc = find_bicycle_bruteforce(f, 12);
    REQUIRE(bc.has_value());
    auto clauses = bicycle_clauses(*bc);
    CHECK(verify_bicycle(clauses, f));
  }
  CHECK(false_count == 30);
}

TEST_CASE("unsat core cycle from the planted snake uses all four clauses") {
  Formula12 f = wrap(1, 3, snake_clauses(example_snake()));
  auto w = find_falsifying(f);
  REQUIRE(w.has_value());
  auto cycle = extract_unsat_core_cycle(*w);
  // the cyclic clause sequence may revisit clauses; as a set it is exactly
  // the snake
  std::set<std::array<uint32_t, 3>> seen;
  for (const auto& c : cycle) seen.insert(*oracles::clause_set_key({c}).begin());
  std::set<std::array<uint32_t, 3>> expect;
  for (const auto& c : f.clauses) expect.insert(*oracles::clause_set_key({c}).begin());
  CHECK(seen == expect);
}

TEST_CASE("unsat core cycles re-verify on random false formulas") {
  int false_count = 0;
  for (int i = 0; false_count < 120 && i < 600; ++i) {
    Formula12 f = sample_binomial(4, 12, 3.0, derive_seed(909, i));
    auto w = find_falsifying(f);
    if (!w) continue;
    ++false_count;
    auto cycle = extract_unsat_core_cycle(*w);
    REQUIRE_FALSE(cycle.empty());
    std::vector<Literal> ulits;
    for (const auto& cl : cycle) ulits.push_back(cl.u);
    CHECK(is_pure(ulits));
    Formula12 sub = wrap(f.m, f.n, cycle);
    CHECK_FALSE(sat_2cnf(existential_projection(sub)));
  }
  CHECK(false_count == 120);
}

TEST_CASE("fabricated witnesses are rejected") {
  Formula12 f = wrap(1, 2, {Clause12(ulit(1), elit(1), elit(2))});
  REQUIRE(evaluate(f));
  FalsityWitness fake;
  fake.assignment.bits = {0};
  fake.core = f.clauses;
  fake.core_indices = {0};
  fake.contradiction_var = 1;
  CHECK_THROWS_AS(extract_unsat_core_cycle(fake), Error);
}
