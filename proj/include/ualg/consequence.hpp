#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"
#include "ualg/term.hpp"
#include "ualg/transformers.hpp"

namespace ualg {

// The data of an entailment query Gamma |- phi over a finite class K with
// transformers tau: assignments h range over all maps of the variable pool
// into each member of K.
struct ConsequenceQuery {
  std::vector<FiniteAlgebra> algebras;
  TransformerTau tau;
  std::vector<Term> gamma;
  Term phi;
  int var_count = 0;
};

struct Countermodel {
  int algebra_index = -1;
  std::vector<Element> assignment;
};

struct EntailResult {
  bool entailed = false;
  std::optional<Countermodel> countermodel;
};

// Gamma |- phi holds when every assignment that equalizes all tau-images of
// Gamma also equalizes the tau-images of phi.
inline EntailResult entails(const ConsequenceQuery& q) {
  if (q.algebras.empty()) throw Error("entails: empty algebra class");
  q.tau.validate();
  for (std::size_t i = 1; i < q.algebras.size(); ++i) {
    if (!(q.algebras[i].signature == q.algebras[0].signature)) {
      throw Error("entails: signature mismatch across the class");
    }
  }
  int needed = max_var_index(q.phi);
  for (const Term& g : q.gamma) needed = std::max(needed, max_var_index(g));
  if (needed >= q.var_count) {
    throw Error("entails: variable x" + std::to_string(needed) +
                " out of range for var_count " + std::to_string(q.var_count));
  }

  auto equalized = [&](const FiniteAlgebra& A, const Term& t,
                       std::span<const Element> env) {
    Element v = eval_term(A, t, env);
    std::vector<Element> unary{v};
    for (const auto& [d, e] : q.tau.pairs) {
      if (eval_term(A, d, unary) != eval_term(A, e, unary)) return false;
    }
    return true;
  };

  for (std::size_t ai = 0; ai < q.algebras.size(); ++ai) {
    const FiniteAlgebra& A = q.algebras[ai];
    std::size_t count = checked_power(static_cast<std::size_t>(A.size),
                                      q.var_count, limits().assignment_budget,
                                      "entails");
    for (std::size_t h = 0; h < count; ++h) {
      std::vector<Element> env = decode_tuple(h, A.size, q.var_count);
      bool premises = true;
      for (const Term& g : q.gamma) {
        if (!equalized(A, g, env)) {
          premises = false;
          break;
        }
      }
      if (premises && !equalized(A, q.phi, env)) {
        return {false, Countermodel{static_cast<int>(ai), env}};
      }
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Randomized checks of the defining properties of a logic: reflexivity, cut
// and substitution-invariance.  Violations indicate implementation bugs;
// these are theorems for every entailment of this shape.

struct ConsequenceProperties {
  std::uint64_t seed = 0;
  int trials = 0;
  int reflexivity_instances = 0;
  int cut_instances = 0;
  int substitution_instances = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline Term random_term(std::mt19937_64& rng, const Signature& sig,
                        int var_count, int depth) {
  std::uniform_int_distribution<int> var_pick(0, var_count - 1);
  if (depth == 0 || sig.symbols.empty() ||
      std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
    return Term::variable(var_pick(rng));
  }
  std::uniform_int_distribution<std::size_t> sym_pick(0, sig.symbols.size() - 1);
  const OpSymbol& sym = sig.symbols[sym_pick(rng)];
  std::vector<Term> args;
  args.reserve(static_cast<std::size_t>(sym.arity));
  for (int i = 0; i < sym.arity; ++i) {
    args.push_back(random_term(rng, sig, var_count, depth - 1));
  }
  return Term::apply(sym.name, std::move(args));
}

inline std::string terms_to_string(const std::vector<Term>& ts) {
  std::string out = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_prefix(ts[i]);
  }
  return out + "}";
}

}  // namespace detail

inline ConsequenceProperties consequence_properties_check(
    std::vector<FiniteAlgebra> K, const TransformerTau& tau, int trials,
    std::uint64_t seed) {
  ConsequenceProperties report;
  report.seed = seed;
  report.trials = trials;
  if (K.empty()) throw Error("consequence_properties_check: empty class");
  std::mt19937_64 rng(seed);
  const Signature& sig = K.front().signature;
  const int var_count = 3;
  const int term_depth = 2;

  auto run = [&](const std::vector<Term>& gamma, const Term& phi, int vars) {
    ConsequenceQuery q{K, tau, gamma, phi, vars};
    return entails(q);
  };
  auto some_terms = [&](int lo, int hi) {
    std::uniform_int_distribution<int> size_pick(lo, hi);
    std::vector<Term> out(static_cast<std::size_t>(size_pick(rng)));
    for (Term& t : out) t = detail::random_term(rng, sig, var_count, term_depth);
    return out;
  };

  for (int trial = 0; trial < trials; ++trial) {
    // (i) reflexivity: phi in Gamma entails Gamma |- phi.
    {
      std::vector<Term> gamma = some_terms(1, 3);
      std::uniform_int_distribution<std::size_t> pick(0, gamma.size() - 1);
      Term phi = gamma[pick(rng)];
      ++report.reflexivity_instances;
      if (!run(gamma, phi, var_count).entailed) {
        report.violations.push_back("reflexivity: " +
                                    detail::terms_to_string(gamma) +
                                    " !|- " + to_prefix(phi));
      }
    }
    // (ii) cut: if Gamma |- psi for all psi in Psi and Psi |- phi, then
    // Gamma |- phi.  Bias Psi toward subsets of Gamma so the premises hold
    // reasonably often.
    {
      std::vector<Term> gamma = some_terms(1, 3);
      std::vector<Term> psi;
      std::uniform_int_distribution<int> coin(0, 1);
      for (const Term& g : gamma) {
        if (coin(rng) == 1) psi.push_back(g);
      }
      if (psi.empty()) psi = some_terms(1, 2);
      Term phi = coin(rng) == 1 && !psi.empty()
                     ? psi.front()
                     : detail::random_term(rng, sig, var_count, term_depth);
      bool premises = run(psi, phi, var_count).entailed;
      for (const Term& p : psi) {
        if (!premises) break;
        premises = run(gamma, p, var_count).entailed;
      }
      if (premises) {
        ++report.cut_instances;
        if (!run(gamma, phi, var_count).entailed) {
          report.violations.push_back(
              "cut: Gamma=" + detail::terms_to_string(gamma) +
              " Psi=" + detail::terms_to_string(psi) + " phi=" + to_prefix(phi));
        }
      }
    }
    // (iii) substitution-invariance: Gamma |- phi implies h[Gamma] |- h(phi).
    // Mix guaranteed (reflexive) instances with arbitrary entailed ones.
    {
      std::vector<Term> gamma = some_terms(1, 3);
      std::uniform_int_distribution<std::size_t> pick(0, gamma.size() - 1);
      std::uniform_int_distribution<int> coin(0, 1);
      Term phi = coin(rng) == 1
                     ? gamma[pick(rng)]
                     : detail::random_term(rng, sig, var_count, term_depth);
      if (run(gamma, phi, var_count).entailed) {
        std::vector<Term> subst;
        int sub_vars = var_count + 2;
        for (int v = 0; v < var_count; ++v) {
          subst.push_back(detail::random_term(rng, sig, sub_vars, term_depth));
        }
        std::vector<Term> hgamma;
        hgamma.reserve(gamma.size());
        for (const Term& g : gamma) hgamma.push_back(substitute(g, subst));
        Term hphi = substitute(phi, subst);
        ++report.substitution_instances;
        if (!run(hgamma, hphi, sub_vars).entailed) {
          report.violations.push_back(
              "substitution: h" + detail::terms_to_string(gamma) + " !|- " +
              to_prefix(hphi));
        }
      }
    }
  }
  return report;
}

}  // namespace ualg
