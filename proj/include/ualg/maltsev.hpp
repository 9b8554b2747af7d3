#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"
#include "ualg/congruence.hpp"
#include "ualg/free_algebra.hpp"
#include "ualg/term.hpp"
#include "ualg/transformers.hpp"

namespace ualg {

// An identity scheme chaining x to y through the transformer images.  Each
// chain term t_r has 2 + 2*|tau|*|rho| variables:
//
//   x = var0, y = var1,
//   first tuple block  = vars 2 .. 1 + |tau|*|rho|,
//   second tuple block = vars 2 + |tau|*|rho| .. 1 + 2*|tau|*|rho|,
//
// where slot (i,j) of a block sits at offset j*|tau| + i, i.e. the order
// delta_1(rho_1),..,delta_n(rho_1),..,delta_1(rho_m),..,delta_n(rho_m).
struct MaltsevScheme {
  TransformerTau tau;
  TransformerRho rho;
  std::vector<Term> chain_terms;

  int slot_count() const {
    return static_cast<int>(tau.pairs.size() * rho.terms.size());
  }
  int scheme_arity() const { return 2 + 2 * slot_count(); }

  void validate() const {
    tau.validate();
    rho.validate();
    if (chain_terms.empty()) throw Error("scheme: at least one chain term required");
    for (const Term& t : chain_terms) {
      if (max_var_index(t) >= scheme_arity()) {
        throw Error("scheme: chain term uses a variable beyond the scheme arity");
      }
    }
  }
};

struct SchemeCounterexample {
  std::string identity;
  Element a = -1;
  Element b = -1;
};

struct SchemeCheck {
  bool ok = false;
  std::optional<SchemeCounterexample> counterexample;
};

// Verify over all (a,b): the diagonal identities
// delta_i(rho_j(x,x)) = epsilon_i(rho_j(x,x)), the opening identity
// x = t_1(x,y,dr,er), the alternations t_r(x,y,er,dr) = t_{r+1}(x,y,dr,er),
// and the closing identity t_k(x,y,er,dr) = y, where dr/er are the tuples
// of delta/epsilon images of the rho values at (x,y).
inline SchemeCheck maltsev_scheme_check(const FiniteAlgebra& A,
                                        const MaltsevScheme& s) {
  s.validate();
  std::size_t slots = static_cast<std::size_t>(s.slot_count());
  for (Element a = 0; a < A.size; ++a) {
    for (Element b = 0; b < A.size; ++b) {
      std::vector<Element> xy{a, b};
      std::vector<Element> dr(slots), er(slots);
      for (std::size_t j = 0; j < s.rho.terms.size(); ++j) {
        Element v = eval_term(A, s.rho.terms[j], xy);
        std::vector<Element> unary{v};
        for (std::size_t i = 0; i < s.tau.pairs.size(); ++i) {
          std::size_t slot = j * s.tau.pairs.size() + i;
          dr[slot] = eval_term(A, s.tau.pairs[i].first, unary);
          er[slot] = eval_term(A, s.tau.pairs[i].second, unary);
        }
      }
      if (a == b) {
        for (std::size_t slot = 0; slot < slots; ++slot) {
          if (dr[slot] != er[slot]) {
            return {false,
                    SchemeCounterexample{"delta(rho(x,x)) = epsilon(rho(x,x))",
                                         a, b}};
          }
        }
      }
      auto chain_env = [&](const std::vector<Element>& first,
                           const std::vector<Element>& second) {
        std::vector<Element> env;
        env.reserve(2 + 2 * slots);
        env.push_back(a);
        env.push_back(b);
        env.insert(env.end(), first.begin(), first.end());
        env.insert(env.end(), second.begin(), second.end());
        return env;
      };
      std::vector<Element> fwd = chain_env(dr, er);
      std::vector<Element> swp = chain_env(er, dr);
      if (eval_term(A, s.chain_terms.front(), fwd) != a) {
        return {false, SchemeCounterexample{"x = t_1(x,y,dr,er)", a, b}};
      }
      for (std::size_t r = 0; r + 1 < s.chain_terms.size(); ++r) {
        if (eval_term(A, s.chain_terms[r], swp) !=
            eval_term(A, s.chain_terms[r + 1], fwd)) {
          return {false,
                  SchemeCounterexample{
                      "t_" + std::to_string(r + 1) + "(x,y,er,dr) = t_" +
                          std::to_string(r + 2) + "(x,y,dr,er)",
                      a, b}};
        }
      }
      if (eval_term(A, s.chain_terms.back(), swp) != b) {
        return {false,
                SchemeCounterexample{
                    "t_" + std::to_string(s.chain_terms.size()) +
                        "(x,y,er,dr) = y",
                    a, b}};
      }
    }
  }
  return {true, std::nullopt};
}

// Derive a scheme for (A, tau, rho) from a derivation chain between the
// generators of the free 2-generated algebra: theta is generated by the
// pairs (delta_i(rho_j(x,y)), epsilon_i(rho_j(x,y))), each chain witness is
// a unary polynomial of the free algebra, and replacing its free slot by
// the matching tuple variable and its constants by their defining terms in
// x, y turns it into a chain term.
inline MaltsevScheme derive_maltsev_scheme(const FiniteAlgebra& A,
                                           const TransformerTau& tau,
                                           const TransformerRho& rho) {
  TransformerCheck pre = check_transformers(A, tau, rho);
  if (!pre.ok) {
    throw Error("derive_maltsev_scheme: the transformers do not witness the "
                "defining formula on the given algebra");
  }
  MaltsevScheme scheme;
  scheme.tau = tau;
  scheme.rho = rho;
  int nslots = scheme.slot_count();

  FreeAlgebra F = free_algebra_2gen(A);
  std::vector<Element> gens{F.gen_x, F.gen_y};
  std::vector<std::pair<Element, Element>> seeds;
  std::vector<int> seed_slot;
  for (std::size_t j = 0; j < rho.terms.size(); ++j) {
    Element v = eval_term(F.algebra, rho.terms[j], gens);
    std::vector<Element> unary{v};
    for (std::size_t i = 0; i < tau.pairs.size(); ++i) {
      Element u = eval_term(F.algebra, tau.pairs[i].first, unary);
      Element w = eval_term(F.algebra, tau.pairs[i].second, unary);
      seeds.emplace_back(u, w);
      seed_slot.push_back(static_cast<int>(j * tau.pairs.size() + i));
    }
  }

  Partition closure = theta(F.algebra, seeds);
  if (!closure.related(F.gen_x, F.gen_y)) {
    throw Error("derive_maltsev_scheme: formula (1) fails in the generated "
                "variety (the free-algebra generators are not identified)");
  }

  DerivationChain chain = extract_chain(F.algebra, seeds, F.gen_x, F.gen_y);
  if (chain.steps.empty()) {
    // x and y coincide in the free algebra: the variety is trivial.
    scheme.chain_terms.push_back(Term::variable(1));
  } else {
    for (const ChainStep& step : chain.steps) {
      int slot = seed_slot[static_cast<std::size_t>(step.seed_index)];
      int target = step.reverse ? 2 + nslots + slot : 2 + slot;
      std::vector<Term> subst;
      subst.reserve(step.witness.constants.size() + 1);
      subst.push_back(Term::variable(target));
      for (Element c : step.witness.constants) {
        subst.push_back(F.provenance[static_cast<std::size_t>(c)]);
      }
      scheme.chain_terms.push_back(substitute(step.witness.term, subst));
    }
  }

  SchemeCheck verdict = maltsev_scheme_check(A, scheme);
  if (!verdict.ok) {
    throw Error("derive_maltsev_scheme: derived scheme failed verification "
                "(implementation bug)");
  }
  return scheme;
}

}  // namespace ualg
