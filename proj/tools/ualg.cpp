// Command-line front end for the finite universal algebra workbench.
//
// Exit codes: 0 = property holds / success, 1 = property fails (certificate
// emitted), 2 = usage or format error, 3 = inconclusive (a configured budget
// was exceeded).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ualg/ualg.hpp"

namespace {

using ualg::Json;

struct Outcome {
  int code = 0;
  std::string human;
  Json report;
};

std::string join_blocks(const ualg::Partition& p) {
  std::string out;
  for (const auto& block : p.blocks()) {
    out += '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(block[i]);
    }
    out += '}';
  }
  return out;
}

Json budgets_json() {
  const ualg::Limits& l = ualg::limits();
  return Json{{"max_universe", l.max_universe},
              {"con_max_universe", l.con_max_universe},
              {"term_budget", l.term_budget},
              {"candidate_budget", l.candidate_budget},
              {"assignment_budget", l.assignment_budget}};
}

Json witness_json(const ualg::TransformerWitness& w) {
  return Json{{"tau", ualg::tau_to_json(w.tau)}, {"rho", ualg::rho_to_json(w.rho)}};
}

std::vector<ualg::FiniteAlgebra> load_catalog_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ualg::Error("catalog directory has no .json files: " + dir);
  std::vector<ualg::FiniteAlgebra> out;
  for (const auto& f : files) out.push_back(ualg::load_algebra(f));
  return out;
}

ualg::Term parse_term_arg(const std::string& text, const ualg::Signature& sig) {
  return ualg::parse_term(text, &sig);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ualg - finite universal algebra workbench"};
  app.require_subcommand(1);

  bool json_output = false;
  app.add_flag("--json", json_output, "emit a machine-readable report on stdout");

  ualg::Limits& lim = ualg::limits();
  if (const char* env = std::getenv("ALGCALC_BUDGET")) {
    try {
      lim.max_universe = std::stoull(env);
    } catch (...) {
      std::cerr << "warning: ignoring unparsable ALGCALC_BUDGET\n";
    }
  }
  app.add_option("--max-universe", lim.max_universe,
                 "largest universe that may be constructed");
  app.add_option("--con-bound", lim.con_max_universe,
                 "largest universe for congruence lattice enumeration");
  app.add_option("--term-budget", lim.term_budget,
                 "candidate terms per enumeration");
  app.add_option("--candidate-budget", lim.candidate_budget,
                 "candidate families per transformer search");
  app.add_option("--assignment-budget", lim.assignment_budget,
                 "assignments per entailment or equation check");

  Outcome outcome;
  auto start = std::chrono::steady_clock::now();

  // --- con -----------------------------------------------------------------
  std::string con_path;
  auto* cmd_con = app.add_subcommand("con", "congruence lattice of an algebra");
  cmd_con->add_option("algebra", con_path, "algebra document")->required();
  cmd_con->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(con_path);
    ualg::ConLattice L = ualg::con(A);
    std::string text = "congruences of " + A.name + ": " + std::to_string(L.size()) + "\n";
    Json list = Json::array();
    for (std::size_t i = 0; i < L.size(); ++i) {
      text += "  [" + std::to_string(i) + "] " + join_blocks(L.congruences[i]) + "\n";
      list.push_back(ualg::partition_to_json(L.congruences[i]));
    }
    text += "covers:\n";
    Json covers = Json::array();
    for (std::size_t i = 0; i < L.size(); ++i) {
      for (std::size_t j = 0; j < L.size(); ++j) {
        if (i == j || !L.leq[i][j]) continue;
        bool cover = true;
        for (std::size_t k = 0; k < L.size() && cover; ++k) {
          if (k != i && k != j && L.leq[i][k] && L.leq[k][j]) cover = false;
        }
        if (cover) {
          text += "  [" + std::to_string(i) + "] < [" + std::to_string(j) + "]\n";
          covers.push_back(Json::array({i, j}));
        }
      }
    }
    outcome.human = text;
    outcome.report["verdict"] = "ok";
    outcome.report["count"] = L.size();
    outcome.report["congruences"] = std::move(list);
    outcome.report["covers"] = std::move(covers);
  });

  // --- mpow ----------------------------------------------------------------
  std::string mpow_path, mpow_out;
  int mpow_n = 2;
  auto* cmd_mpow = app.add_subcommand("mpow", "matrix power of an algebra");
  cmd_mpow->add_option("algebra", mpow_path)->required();
  cmd_mpow->add_option("-n,--exponent", mpow_n, "exponent (default 2)");
  cmd_mpow->add_option("-o,--out", mpow_out, "output document")->required();
  cmd_mpow->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(mpow_path);
    ualg::MatrixPowerAlgebra M = ualg::matrix_power(A, mpow_n);
    ualg::save_algebra(mpow_out, M.result);
    outcome.human = "wrote " + M.result.name + " (size " +
                    std::to_string(M.result.size) + ") to " + mpow_out + "\n";
    outcome.report["verdict"] = "ok";
    outcome.report["size"] = M.result.size;
    outcome.report["out"] = mpow_out;
  });

  // --- check-transformers ----------------------------------------------------
  std::string ct_path, ct_tau, ct_rho;
  auto* cmd_ct = app.add_subcommand("check-transformers",
                                    "verify the defining formula on an algebra");
  cmd_ct->add_option("algebra", ct_path)->required();
  cmd_ct->add_option("--tau", ct_tau, "file of 'delta | epsilon' lines")->required();
  cmd_ct->add_option("--rho", ct_rho, "file of binary terms")->required();
  cmd_ct->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(ct_path);
    ualg::TransformerTau tau = ualg::load_tau(ct_tau, &A.signature);
    ualg::TransformerRho rho = ualg::load_rho(ct_rho, &A.signature);
    ualg::TransformerCheck c = ualg::check_transformers(A, tau, rho);
    if (c.ok) {
      outcome.human = "transformers witness the formula on " + A.name + "\n";
      outcome.report["verdict"] = "holds";
    } else {
      outcome.code = 1;
      auto [a, b] = *c.counterexample;
      outcome.human = "counterexample on " + A.name + ": pair (" +
                      std::to_string(a) + "," + std::to_string(b) + ")\n";
      outcome.report["verdict"] = "fails";
      outcome.report["counterexample"] = Json::array({a, b});
    }
  });

  // --- search-transformers ---------------------------------------------------
  std::string st_path;
  int st_depth = 2, st_max_i = 1, st_max_j = 2;
  auto* cmd_st = app.add_subcommand("search-transformers",
                                    "bounded search for a transformer witness");
  cmd_st->add_option("algebra", st_path)->required();
  cmd_st->add_option("--depth", st_depth, "term depth bound");
  cmd_st->add_option("--max-i", st_max_i, "largest |tau|");
  cmd_st->add_option("--max-j", st_max_j, "largest |rho|");
  cmd_st->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(st_path);
    ualg::TransformerSearch s =
        ualg::search_transformers(A, st_depth, st_max_i, st_max_j);
    outcome.report["candidates_tried"] = s.candidates_tried;
    switch (s.status) {
      case ualg::TransformerSearch::Status::found: {
        outcome.human = "witness found on " + A.name + "\n";
        for (const auto& [d, e] : s.witness->tau.pairs) {
          outcome.human += "  tau: " + ualg::to_prefix(d) + " | " +
                           ualg::to_prefix(e) + "\n";
        }
        for (const auto& t : s.witness->rho.terms) {
          outcome.human += "  rho: " + ualg::to_prefix(t) + "\n";
        }
        outcome.report["verdict"] = "found";
        outcome.report["witness"] = witness_json(*s.witness);
        break;
      }
      case ualg::TransformerSearch::Status::none:
        outcome.code = 1;
        outcome.human = "no witness within bounds (exhaustive; bounded-depth, "
                        "single-algebra evidence)\n";
        outcome.report["verdict"] = "none";
        break;
      case ualg::TransformerSearch::Status::inconclusive:
        outcome.code = 3;
        outcome.human = "search budget exceeded: inconclusive\n";
        outcome.report["verdict"] = "inconclusive";
        break;
    }
  });

  // --- entail ----------------------------------------------------------------
  std::vector<std::string> en_algs, en_gamma;
  std::string en_tau, en_phi;
  int en_vars = -1;
  auto* cmd_en = app.add_subcommand("entail", "decide Gamma |- phi over a class");
  cmd_en->add_option("--k", en_algs, "algebra documents")->required();
  cmd_en->add_option("--tau", en_tau, "transformer file")->required();
  cmd_en->add_option("--gamma", en_gamma, "premise terms (prefix form)");
  cmd_en->add_option("--phi", en_phi, "conclusion term")->required();
  cmd_en->add_option("--vars", en_vars, "variable pool size (default: inferred)");
  cmd_en->callback([&] {
    ualg::ConsequenceQuery q;
    for (const auto& p : en_algs) q.algebras.push_back(ualg::load_algebra(p));
    const ualg::Signature& sig = q.algebras.front().signature;
    q.tau = ualg::load_tau(en_tau, &sig);
    for (const auto& g : en_gamma) q.gamma.push_back(parse_term_arg(g, sig));
    q.phi = parse_term_arg(en_phi, sig);
    int needed = ualg::max_var_index(q.phi);
    for (const auto& g : q.gamma) needed = std::max(needed, ualg::max_var_index(g));
    q.var_count = en_vars >= 0 ? en_vars : needed + 1;
    ualg::EntailResult r = ualg::entails(q);
    if (r.entailed) {
      outcome.human = "entailment holds\n";
      outcome.report["verdict"] = "holds";
    } else {
      outcome.code = 1;
      outcome.human = "countermodel in algebra " +
                      std::to_string(r.countermodel->algebra_index) + ": h = (";
      for (std::size_t i = 0; i < r.countermodel->assignment.size(); ++i) {
        if (i > 0) outcome.human += ",";
        outcome.human += std::to_string(r.countermodel->assignment[i]);
      }
      outcome.human += ")\n";
      outcome.report["verdict"] = "fails";
      outcome.report["countermodel"] = {
          {"algebra_index", r.countermodel->algebra_index},
          {"assignment", r.countermodel->assignment}};
    }
  });

  // --- ceq ---------------------------------------------------------------
  auto* cmd_ceq = app.add_subcommand("ceq", "congruence equations");
  cmd_ceq->require_subcommand(1);

  std::string ceq_check_alg, ceq_check_eq, ceq_check_out;
  auto* cmd_ceq_check = cmd_ceq->add_subcommand("check", "check one algebra");
  cmd_ceq_check->add_option("algebra", ceq_check_alg)->required();
  cmd_ceq_check->add_option("equation", ceq_check_eq)->required();
  cmd_ceq_check->add_option("--out", ceq_check_out, "write the certificate here");
  cmd_ceq_check->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(ceq_check_alg);
    ualg::CongEquation eq = ualg::parse_cong_equation(ceq_check_eq);
    ualg::EquationCheck c = ualg::check_equation(A, eq);
    outcome.report["assignments_checked"] = c.assignments_checked;
    switch (c.status) {
      case ualg::EquationCheck::Status::satisfied:
        outcome.human = A.name + " satisfies " + ualg::to_string(eq) + "\n";
        outcome.report["verdict"] = "satisfied";
        break;
      case ualg::EquationCheck::Status::failed: {
        outcome.code = 1;
        const auto& cert = *c.certificate;
        outcome.human = A.name + " fails " + ualg::to_string(eq) + "\n";
        for (const auto& [name, p] : cert.assignment) {
          outcome.human += "  " + name + " -> " + join_blocks(p) + "\n";
        }
        outcome.human += "  discrepancy (" + std::to_string(cert.discrepancy.first) +
                         "," + std::to_string(cert.discrepancy.second) + ")\n";
        outcome.report["verdict"] = "fails";
        outcome.report["certificate"] = ualg::certificate_to_json(cert);
        if (!ceq_check_out.empty()) {
          ualg::write_file(ceq_check_out,
                           ualg::certificate_to_json(cert).dump(2) + "\n");
          outcome.human += "  certificate written to " + ceq_check_out + "\n";
        }
        break;
      }
      case ualg::EquationCheck::Status::inconclusive:
        outcome.code = 3;
        outcome.human = "assignment budget exceeded: inconclusive\n";
        outcome.report["verdict"] = "inconclusive";
        break;
    }
  });

  std::string ceq_find_eq, ceq_find_dir;
  auto* cmd_ceq_find = cmd_ceq->add_subcommand("find", "scan a catalog for a failure");
  cmd_ceq_find->add_option("equation", ceq_find_eq)->required();
  cmd_ceq_find->add_option("--catalog", ceq_find_dir,
                           "directory of algebra documents (default: built-in)");
  cmd_ceq_find->callback([&] {
    ualg::CongEquation eq = ualg::parse_cong_equation(ceq_find_eq);
    std::vector<ualg::FiniteAlgebra> catalog =
        ceq_find_dir.empty() ? ualg::default_catalog() : load_catalog_dir(ceq_find_dir);
    ualg::EquationCheck c = ualg::find_failure(catalog, eq);
    outcome.report["assignments_checked"] = c.assignments_checked;
    switch (c.status) {
      case ualg::EquationCheck::Status::satisfied:
        outcome.human = "equation held on the whole catalog (" +
                        std::to_string(catalog.size()) +
                        " algebras; not a triviality proof)\n";
        outcome.report["verdict"] = "held-on-catalog";
        break;
      case ualg::EquationCheck::Status::failed:
        outcome.code = 1;
        outcome.human = "failure found in " + c.certificate->algebra.name + "\n";
        outcome.report["verdict"] = "fails";
        outcome.report["certificate"] = ualg::certificate_to_json(*c.certificate);
        break;
      case ualg::EquationCheck::Status::inconclusive:
        outcome.code = 3;
        outcome.human = "no failure found, but some checks were inconclusive\n";
        outcome.report["verdict"] = "inconclusive";
        break;
    }
  });

  std::string ceq_lift_path;
  auto* cmd_ceq_lift = cmd_ceq->add_subcommand(
      "lift", "lift a failure certificate through the second matrix power");
  cmd_ceq_lift->add_option("certificate", ceq_lift_path)->required();
  cmd_ceq_lift->callback([&] {
    ualg::FailureCertificate cert = ualg::load_certificate(ceq_lift_path);
    ualg::LiftReport r = ualg::lift_failure_check(cert);
    outcome.human = "base failure re-validated on " + r.base.algebra.name + "\n";
    outcome.human += "lifted failure established on " + r.lifted.algebra.name +
                     ", discrepancy (" + std::to_string(r.lifted.discrepancy.first) +
                     "," + std::to_string(r.lifted.discrepancy.second) + ")\n";
    outcome.human += std::string("transformer witness on the matrix power: ") +
                     (r.transformer_ok ? "holds" : "FAILS") + "\n";
    outcome.report["verdict"] = r.ok() ? "lifted" : "transformer-check-failed";
    outcome.report["base"] = ualg::certificate_to_json(r.base);
    outcome.report["lifted"] = ualg::certificate_to_json(r.lifted);
    outcome.report["transformer_ok"] = r.transformer_ok;
    if (!r.transformer_ok) outcome.code = 1;
  });

  // --- lambda-verify ---------------------------------------------------------
  std::string lv_path;
  auto* cmd_lv = app.add_subcommand("lambda-verify",
                                    "verify the relation-algebra embedding into "
                                    "the second matrix power");
  cmd_lv->add_option("algebra", lv_path)->required();
  cmd_lv->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(lv_path);
    ualg::LambdaReport r = ualg::verify_lambda_embedding(A);
    outcome.report["congruence_count"] = r.congruence_count;
    outcome.report["pairs_checked"] = r.pairs_checked;
    if (r.ok()) {
      outcome.human = "embedding verified on " + A.name + " (" +
                      std::to_string(r.congruence_count) + " congruences, " +
                      std::to_string(r.pairs_checked) + " pairs)\n";
      outcome.report["verdict"] = "holds";
    } else {
      outcome.code = 1;
      outcome.human = "violations found on " + A.name + ":\n";
      Json v = Json::array();
      for (const auto& viol : r.violations) {
        outcome.human += "  " + viol.check + " at (" + std::to_string(viol.alpha) +
                         "," + std::to_string(viol.beta) + ")\n";
        v.push_back({{"check", viol.check}, {"alpha", viol.alpha}, {"beta", viol.beta}});
      }
      outcome.report["verdict"] = "fails";
      outcome.report["violations"] = std::move(v);
    }
  });

  // --- maltsev -----------------------------------------------------------
  auto* cmd_mal = app.add_subcommand("maltsev", "identity schemes");
  cmd_mal->require_subcommand(1);

  std::string md_alg, md_tau, md_rho, md_out;
  auto* cmd_md = cmd_mal->add_subcommand("derive", "derive a scheme from transformers");
  cmd_md->add_option("algebra", md_alg)->required();
  cmd_md->add_option("--tau", md_tau)->required();
  cmd_md->add_option("--rho", md_rho)->required();
  cmd_md->add_option("--out", md_out, "write the scheme here");
  cmd_md->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(md_alg);
    ualg::TransformerTau tau = ualg::load_tau(md_tau, &A.signature);
    ualg::TransformerRho rho = ualg::load_rho(md_rho, &A.signature);
    ualg::MaltsevScheme s = ualg::derive_maltsev_scheme(A, tau, rho);
    outcome.human = "derived scheme with k = " + std::to_string(s.chain_terms.size()) +
                    " chain terms; verified on " + A.name + "\n";
    for (const auto& t : s.chain_terms) {
      outcome.human += "  " + ualg::to_prefix(t) + "\n";
    }
    outcome.report["verdict"] = "derived";
    outcome.report["scheme"] = ualg::scheme_to_json(s);
    if (!md_out.empty()) {
      ualg::write_file(md_out, ualg::scheme_to_json(s).dump(2) + "\n");
      outcome.human += "scheme written to " + md_out + "\n";
    }
  });

  std::string mc_alg, mc_scheme;
  auto* cmd_mc = cmd_mal->add_subcommand("check", "check a scheme on an algebra");
  cmd_mc->add_option("algebra", mc_alg)->required();
  cmd_mc->add_option("--scheme", mc_scheme)->required();
  cmd_mc->callback([&] {
    ualg::FiniteAlgebra A = ualg::load_algebra(mc_alg);
    ualg::MaltsevScheme s = ualg::load_scheme(mc_scheme, &A.signature);
    ualg::SchemeCheck c = ualg::maltsev_scheme_check(A, s);
    if (c.ok) {
      outcome.human = "scheme holds on " + A.name + "\n";
      outcome.report["verdict"] = "holds";
    } else {
      outcome.code = 1;
      outcome.human = "scheme fails on " + A.name + ": identity [" +
                      c.counterexample->identity + "] at (" +
                      std::to_string(c.counterexample->a) + "," +
                      std::to_string(c.counterexample->b) + ")\n";
      outcome.report["verdict"] = "fails";
      outcome.report["counterexample"] = {{"identity", c.counterexample->identity},
                                          {"a", c.counterexample->a},
                                          {"b", c.counterexample->b}};
    }
  });

  // --- catalog -----------------------------------------------------------
  auto* cmd_cat = app.add_subcommand("catalog", "built-in algebras");
  cmd_cat->require_subcommand(1);

  auto* cmd_cat_list = cmd_cat->add_subcommand("list", "list the built-in catalog");
  cmd_cat_list->callback([&] {
    Json list = Json::array();
    for (const auto& A : ualg::default_catalog()) {
      outcome.human += A.name + " (size " + std::to_string(A.size) + ", " +
                       std::to_string(A.signature.symbols.size()) + " operations)\n";
      list.push_back({{"name", A.name}, {"size", A.size}});
    }
    outcome.report["verdict"] = "ok";
    outcome.report["catalog"] = std::move(list);
  });

  std::string cat_dir;
  auto* cmd_cat_export = cmd_cat->add_subcommand(
      "export", "write the built-in catalog and example transformer files");
  cmd_cat_export->add_option("directory", cat_dir)->required();
  cmd_cat_export->callback([&] {
    std::filesystem::create_directories(cat_dir);
    for (const auto& A : ualg::default_catalog()) {
      ualg::save_algebra(cat_dir + "/" + A.name + ".json", A);
    }
    ualg::write_file(cat_dir + "/bool.tau", "x0 | (one)\n");
    ualg::write_file(cat_dir + "/bool.rho", "(imp x0 x1)\n(imp x1 x0)\n");
    ualg::write_file(cat_dir + "/mpow.tau", "x0 | (box x0)\n");
    ualg::write_file(cat_dir + "/mpow.rho",
                     "(arrow x0 x1)\n(backarrow x0 x1)\n");
    outcome.human = "catalog written to " + cat_dir + "\n";
    outcome.report["verdict"] = "ok";
  });

  std::vector<std::string> argv_echo(argv, argv + argc);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ualg::BudgetError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    if (json_output) {
      Json err{{"command", argv_echo}, {"verdict", "inconclusive"},
               {"error", e.what()}, {"budgets", budgets_json()}};
      std::cout << err.dump(2) << "\n";
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (json_output) {
      Json err{{"command", argv_echo}, {"verdict", "error"}, {"error", e.what()}};
      std::cout << err.dump(2) << "\n";
    }
    return 2;
  }

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  if (json_output) {
    Json report;
    report["command"] = argv_echo;
    for (auto& [key, value] : outcome.report.items()) report[key] = value;
    report["budgets"] = budgets_json();
    report["elapsed_ms"] = elapsed;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << outcome.human;
  }
  return outcome.code;
}
