#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsat12/certificates.hpp"
#include "qsat12/counting.hpp"
#include "qsat12/evaluator.hpp"
#include "qsat12/formula.hpp"
#include "qsat12/generator.hpp"
#include "qsat12/reduction.hpp"
#include "qsat12/sweep.hpp"
#include "qsat12/threshold.hpp"

using json = nlohmann::json;
using namespace qsat12;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error(Errc::ParseError, "cannot open output file: " + out_path);
  out << text;
}

Formula12 load_qdimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open input file: " + path);
  return read_qdimacs(in);
}

json lit_json(const Literal& l) {
  return json{{"var", l.var},
              {"negated", l.negated},
              {"block", l.block == Block::Universal ? "a" : "e"}};
}

json clause_json(const Clause12& c) {
  return json{{"u", lit_json(c.u)}, {"e1", lit_json(c.e1)}, {"e2", lit_json(c.e2)}};
}

json clauses_json(const std::vector<Clause12>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(clause_json(c));
  return arr;
}

MRule make_m_rule(uint32_t m, double alpha) {
  if (m > 0) return FixedM{m};
  return AlphaLog{alpha};
}

int run(int argc, char** argv) {
  CLI::App app{"random (1,2)-QSAT toolkit"};
  app.require_subcommand(1);
  // let the global options (--seed, --out, ...) appear after the subcommand
  app.fallthrough();

  uint64_t seed = 0;
  uint32_t threads = 0;
  bool as_json = false, as_csv = false;
  std::string out_path;
  app.add_option("--seed", seed, "master RNG seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_flag("--json", as_json, "JSON output");
  app.add_flag("--csv", as_csv, "CSV output");
  app.add_option("--out", out_path, "write output to FILE instead of stdout");

  // generate
  auto* gen = app.add_subcommand("generate", "sample a random formula");
  uint32_t g_m = 1, g_n = 2;
  uint64_t g_L = 0;
  double g_c = -1.0;
  gen->add_option("--m", g_m, "universal variables")->required();
  gen->add_option("--n", g_n, "existential variables")->required();
  auto* optL = gen->add_option("--L", g_L, "exact clause count (uniform model)");
  auto* optC = gen->add_option("--c", g_c, "density (binomial model, p = c/(4mn))");
  optL->excludes(optC);

  // solve
  auto* solve = app.add_subcommand("solve", "decide truth of a formula");
  std::string solve_file;
  bool want_witness = false;
  solve->add_option("file", solve_file, "QDIMACS input")->required();
  solve->add_flag("--witness", want_witness, "print falsifying assignment and core as JSON");

  // certify
  auto* certify = app.add_subcommand("certify", "search for a falsity certificate");
  std::string cert_file;
  bool want_snake = false, want_bicycle = false, want_cycle = false;
  uint32_t max_len = 8;
  certify->add_option("file", cert_file, "QDIMACS input")->required();
  certify->add_flag("--snake", want_snake, "search for a snake");
  certify->add_flag("--bicycle", want_bicycle, "search for a bicycle");
  certify->add_flag("--cycle", want_cycle, "extract a contradictory implication cycle");
  certify->add_option("--max-len", max_len, "maximum certificate length (clauses)");

  // count
  auto* count = app.add_subcommand("count", "exact structure counts and expectations");
  std::string what;
  uint64_t cn_n = 0;
  uint32_t cn_m = 0, cn_s = 0;
  double cn_c = -1.0;
  count->add_option("--what", what, "snakes|bicycles|d|expectation")->required();
  count->add_option("--n", cn_n, "existential variables")->required();
  count->add_option("--m", cn_m, "universal variables")->required();
  count->add_option("--s", cn_s, "structure parameter s")->required();
  count->add_option("--c", cn_c, "density (for expectation)");

  // threshold
  auto* thresh = app.add_subcommand("threshold", "critical ratio c*(alpha)");
  double t_alpha = 0.0;
  thresh->add_option("--alpha", t_alpha, "ratio m / ln n")->required();

  // gfun
  auto* gfun = app.add_subcommand("gfun", "rate function over (beta, gamma)");
  double gf_alpha = 0.0, gf_c = 0.0;
  uint32_t gf_grid = 20;
  gfun->add_option("--alpha", gf_alpha)->required();
  gfun->add_option("--c", gf_c)->required();
  gfun->add_option("--grid", gf_grid, "grid resolution per axis");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "3-CNF satisfiability to (1,2)-QSAT falsity");
  std::string red_file;
  reduce->add_option("file", red_file, "DIMACS CNF input")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "phase-transition sweep over c");
  uint32_t sw_n = 0, sw_m = 0, sw_samples = 100;
  double sw_alpha = 0.0, sw_from = 0.5, sw_to = 2.5, sw_step = 0.1;
  bool sw_binomial = false;
  sw->add_option("--n", sw_n)->required();
  auto* swm = sw->add_option("--m", sw_m, "fixed universal count");
  auto* swa = sw->add_option("--alpha", sw_alpha, "m = floor(alpha ln n)");
  swm->excludes(swa);
  sw->add_option("--c-from", sw_from);
  sw->add_option("--c-to", sw_to);
  sw->add_option("--c-step", sw_step);
  sw->add_option("--samples", sw_samples);
  sw->add_flag("--binomial", sw_binomial, "binomial model instead of uniform-L");

  // estimate-threshold
  auto* et = app.add_subcommand("estimate-threshold", "empirical bisection for p_hat = 1/2");
  uint32_t et_n = 0, et_m = 0, et_samples = 200;
  double et_alpha = 0.0, et_tol = 0.02;
  et->add_option("--n", et_n)->required();
  auto* etm = et->add_option("--m", et_m);
  auto* eta = et->add_option("--alpha", et_alpha);
  etm->excludes(eta);
  et->add_option("--samples", et_samples);
  et->add_option("--tol", et_tol);

  // figure1
  auto* fig = app.add_subcommand("figure1", "critical-ratio curve table");
  std::vector<double> fig_alphas;
  fig->add_option("--alpha", fig_alphas, "alpha grid (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // normalize CLI11's exit codes: 0 for --help, 1 for any usage error
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*gen) {
    if (!*optL && !*optC) throw CLI::ValidationError("generate", "one of --L or --c is required");
    GenConfig cfg;
    cfg.m = g_m;
    cfg.n = g_n;
    cfg.seed = seed;
    if (*optL) {
      cfg.model = UniformL{g_L};
    } else {
      cfg.model = Binomial{g_c};
    }
    emit(write_qdimacs(sample(cfg)), out_path);
    return 0;
  }

  if (*solve) {
    Formula12 f = load_qdimacs(solve_file);
    if (!want_witness) {
      emit(evaluate(f) ? "TRUE" : "FALSE", out_path);
      return 0;
    }
    auto w = find_falsifying(f);
    json j;
    j["value"] = !w.has_value();
    if (w) {
      j["assignment"] = w->assignment.bits;
      j["core_indices"] = w->core_indices;
      j["contradiction_var"] = w->contradiction_var;
    }
    emit(j.dump(2), out_path);
    return 0;
  }

  if (*certify) {
    Formula12 f = load_qdimacs(cert_file);
    if (!want_snake && !want_bicycle && !want_cycle) want_bicycle = true;
    json j;
    if (want_cycle) {
      auto w = find_falsifying(f);
      if (!w) {
        emit("none", out_path);
        return 0;
      }
      j["type"] = "cycle";
      j["clauses"] = clauses_json(extract_unsat_core_cycle(*w));
    } else if (want_snake) {
      auto sc = find_snake_bruteforce(f, max_len);
      if (!sc) {
        emit("none", out_path);
        return 0;
      }
      j["type"] = "snake";
      j["t"] = sc->t;
      j["w"] = json::array();
      for (const auto& l : sc->w) j["w"].push_back(lit_json(l));
      j["v"] = json::array();
      for (const auto& l : sc->v) j["v"].push_back(lit_json(l));
      j["clauses"] = clauses_json(snake_clauses(*sc));
    } else {
      auto bc = find_bicycle_bruteforce(f, max_len);
      if (!bc) {
        emit("none", out_path);
        return 0;
      }
      j["type"] = "bicycle";
      j["s"] = bc->s;
      j["u"] = lit_json(bc->u);
      j["v_endpoint"] = lit_json(bc->vlit);
      j["w"] = json::array();
      for (const auto& l : bc->w) j["w"].push_back(lit_json(l));
      j["v"] = json::array();
      for (const auto& l : bc->v) j["v"].push_back(lit_json(l));
      j["clauses"] = clauses_json(bicycle_clauses(*bc));
    }
    emit(j.dump(2), out_path);
    return 0;
  }

  if (*count) {
    json j;
    j["n"] = cn_n;
    j["m"] = cn_m;
    j["s"] = cn_s;
    std::string value;
    if (what == "snakes") {
      value = count_snakes(cn_n, cn_m, cn_s).str();
    } else if (what == "bicycles") {
      value = count_bicycles(cn_n, cn_m, cn_s).str();
    } else if (what == "d") {
      value = d_pure_sequences(cn_m, cn_s).str();
    } else if (what == "expectation") {
      if (cn_c < 0.0) throw CLI::ValidationError("count", "--c is required for expectation");
      j["c"] = cn_c;
      j["expected_snakes"] = expected_snakes(cn_n, cn_m, cn_c, cn_s);
      j["expected_bicycles"] = expected_bicycles(cn_n, cn_m, cn_c, cn_s);
      emit(as_json ? j.dump(2)
                   : "E[snakes] = " + std::to_string(j["expected_snakes"].get<double>()) +
                         "\nE[bicycles] = " +
                         std::to_string(j["expected_bicycles"].get<double>()),
           out_path);
      return 0;
    } else {
      throw CLI::ValidationError("count", "--what must be snakes|bicycles|d|expectation");
    }
    j["count"] = value;
    emit(as_json ? j.dump(2) : value, out_path);
    return 0;
  }

  if (*thresh) {
    ThresholdResult r = critical_ratio(t_alpha);
    if (as_json) {
      json j{{"alpha", r.alpha},
             {"c_star", r.c_star},
             {"branch", r.branch == ThresholdBranch::Saturated2 ? "saturated" : "root"},
             {"residual", r.residual}};
      emit(j.dump(2), out_path);
    } else {
      std::ostringstream os;
      os.precision(9);
      os << std::fixed << "c*(" << t_alpha << ") = " << r.c_star << " ["
         << (r.branch == ThresholdBranch::Saturated2 ? "saturated" : "root") << "]";
      emit(os.str(), out_path);
    }
    return 0;
  }

  if (*gfun) {
    auto [beta_hat, gamma_hat] = stationary_point(gf_alpha, gf_c);
    std::ostringstream os;
    os.precision(9);
    os << std::fixed << "beta,gamma,g\n";
    for (uint32_t i = 1; i <= gf_grid; ++i) {
      double beta = gf_alpha * i / (gf_grid + 1.0);
      for (uint32_t k = 0; k <= gf_grid; ++k) {
        double gamma = beta + (3.0 * gf_alpha - beta) * k / gf_grid;
        os << beta << ',' << gamma << ',' << g(gf_alpha, gf_c, beta, gamma).value << '\n';
      }
    }
    os << beta_hat << ',' << gamma_hat << ','
       << g(gf_alpha, gf_c, beta_hat, gamma_hat).value << '\n';
    emit(os.str(), out_path);
    return 0;
  }

  if (*reduce) {
    std::ifstream in(red_file);
    if (!in) throw Error(Errc::ParseError, "cannot open input file: " + red_file);
    emit(write_qdimacs(reduce_3sat(read_dimacs_cnf(in))), out_path);
    return 0;
  }

  if (*sw) {
    if (!*swm && !*swa) throw CLI::ValidationError("sweep", "one of --m or --alpha is required");
    SweepConfig cfg;
    cfg.n = sw_n;
    cfg.m_rule = make_m_rule(*swm ? sw_m : 0, sw_alpha);
    for (double c = sw_from; c <= sw_to + 1e-12; c += sw_step) cfg.c_grid.push_back(c);
    cfg.samples_per_point = sw_samples;
    cfg.seed = seed;
    cfg.binomial_model = sw_binomial;
    cfg.threads = threads;
    emit(sweep_csv(sweep(cfg)), out_path);
    return 0;
  }

  if (*et) {
    if (!*etm && !*eta)
      throw CLI::ValidationError("estimate-threshold", "one of --m or --alpha is required");
    ThresholdEstimate est = estimate_threshold(et_n, make_m_rule(*etm ? et_m : 0, et_alpha),
                                               et_samples, seed, et_tol, threads);
    if (as_csv) {
      emit(sweep_csv(est.probes), out_path);
    } else {
      json j{{"c_hat", est.c_hat}, {"non_monotone_warning", est.non_monotone_warning}};
      emit(as_json ? j.dump(2) : "c_hat = " + std::to_string(est.c_hat), out_path);
    }
    if (est.non_monotone_warning) {
      std::cerr << "warning: observed p_hat not monotone along probed points\n";
    }
    return 0;
  }

  if (*fig) {
    if (fig_alphas.empty()) {
      for (double a = 1.0; a <= 20.0 + 1e-9; a += 0.25) fig_alphas.push_back(a);
    }
    emit(figure1_table(fig_alphas), out_path);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::SearchBudgetExceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
