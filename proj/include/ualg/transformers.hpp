#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"
#include "ualg/term.hpp"
#include "ualg/term_enum.hpp"

namespace ualg {

// The family tau = {(delta_i, epsilon_i)} of unary term pairs.  Constant
// terms are allowed; the only variable that may occur is x0.
struct TransformerTau {
  std::vector<std::pair<Term, Term>> pairs;

  void validate() const {
    if (pairs.empty()) throw Error("tau: at least one (delta, epsilon) pair required");
    for (const auto& [d, e] : pairs) {
      if (max_var_index(d) > 0 || max_var_index(e) > 0) {
        throw Error("tau: delta/epsilon terms must be unary (variable x0 only)");
      }
    }
  }
};

// The family rho = {rho_j} of binary terms (variables x0, x1).
struct TransformerRho {
  std::vector<Term> terms;

  void validate() const {
    if (terms.empty()) throw Error("rho: at least one binary term required");
    for (const Term& t : terms) {
      if (max_var_index(t) > 1) {
        throw Error("rho: terms must be binary (variables x0, x1 only)");
      }
    }
  }
};

// The standard witness on a second matrix power: tau(x) = {(x, box x)},
// rho(x,y) = {arrow(x,y), backarrow(x,y)}.
inline TransformerTau matrix_power_tau() {
  TransformerTau tau;
  tau.pairs.emplace_back(Term::variable(0),
                         Term::apply("box", {Term::variable(0)}));
  return tau;
}

inline TransformerRho matrix_power_rho() {
  TransformerRho rho;
  rho.terms.push_back(Term::apply("arrow", {Term::variable(0), Term::variable(1)}));
  rho.terms.push_back(
      Term::apply("backarrow", {Term::variable(0), Term::variable(1)}));
  return rho;
}

struct TransformerCheck {
  bool ok = false;
  // A pair (a,b) with a != b satisfying the left side, or (a,a) failing it.
  std::optional<std::pair<Element, Element>> counterexample;
};

// Does [for all i,j: delta_i(rho_j(a,b)) = epsilon_i(rho_j(a,b))] hold
// exactly when a = b, for all a, b in A?
inline TransformerCheck check_transformers(const FiniteAlgebra& A,
                                           const TransformerTau& tau,
                                           const TransformerRho& rho) {
  tau.validate();
  rho.validate();
  for (Element a = 0; a < A.size; ++a) {
    for (Element b = 0; b < A.size; ++b) {
      bool left = true;
      std::vector<Element> env{a, b};
      for (const Term& r : rho.terms) {
        Element v = eval_term(A, r, env);
        std::vector<Element> unary{v};
        for (const auto& [d, e] : tau.pairs) {
          if (eval_term(A, d, unary) != eval_term(A, e, unary)) {
            left = false;
            break;
          }
        }
        if (!left) break;
      }
      if (left != (a == b)) {
        return {false, std::make_pair(a, b)};
      }
    }
  }
  return {true, std::nullopt};
}

struct ClassTransformerCheck {
  bool ok = false;
  int algebra_index = -1;
  std::optional<std::pair<Element, Element>> counterexample;
};

inline ClassTransformerCheck check_transformers_class(
    std::span<const FiniteAlgebra> K, const TransformerTau& tau,
    const TransformerRho& rho) {
  if (K.empty()) throw Error("check_transformers_class: empty class");
  for (std::size_t i = 1; i < K.size(); ++i) {
    if (!(K[i].signature == K[0].signature)) {
      throw Error("check_transformers_class: signature mismatch across the class");
    }
  }
  for (std::size_t i = 0; i < K.size(); ++i) {
    TransformerCheck c = check_transformers(K[i], tau, rho);
    if (!c.ok) return {false, static_cast<int>(i), c.counterexample};
  }
  return {true, -1, std::nullopt};
}

// ---------------------------------------------------------------------------
// Bounded transformer search.

struct TransformerWitness {
  TransformerTau tau;
  TransformerRho rho;
};

struct TransformerSearch {
  enum class Status { found, none, inconclusive };
  Status status = Status::none;
  std::optional<TransformerWitness> witness;
  std::size_t candidates_tried = 0;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Exhaustive search over families built from deduplicated unary/binary term
// functions of depth <= depth, |tau| <= max_i, |rho| <= max_j.  Candidates
// are visited in the canonical order (max term depth, |tau|, |rho|,
// lexicographic index tuples), so the first witness is deterministic.
inline TransformerSearch search_transformers(const FiniteAlgebra& A, int depth,
                                             int max_i, int max_j) {
  if (max_i < 1 || max_j < 1) throw Error("search_transformers: budgets must be positive");
  TransformerSearch result;

  std::vector<TermFunction> unary, binary;
  try {
    unary = distinct_term_functions(A, 1, depth);
    binary = distinct_term_functions(A, 2, depth);
  } catch (const BudgetError&) {
    result.status = TransformerSearch::Status::inconclusive;
    return result;
  }

  // Candidate tau entries are ordered pairs of unary functions.
  struct PairEntry {
    std::size_t d, e;
    int depth;
  };
  std::vector<PairEntry> pairs;
  pairs.reserve(unary.size() * unary.size());
  for (std::size_t d = 0; d < unary.size(); ++d) {
    for (std::size_t e = 0; e < unary.size(); ++e) {
      pairs.push_back({d, e, std::max(unary[d].depth, unary[e].depth)});
    }
  }

  int n = A.size;
  std::size_t offdiag_words = (static_cast<std::size_t>(n) * n + 63) / 64;
  std::vector<std::uint64_t> target(offdiag_words, 0);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (a == b) continue;
      std::size_t bit = static_cast<std::size_t>(a) * n + b;
      target[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }

  // Per (pair, rho): whether the diagonal identities hold, and which
  // off-diagonal (a,b) the pair distinguishes.
  std::size_t np = pairs.size(), nb = binary.size();
  std::vector<char> diag_ok(np * nb, 0);
  std::vector<std::vector<std::uint64_t>> dist(np * nb);
  for (std::size_t p = 0; p < np; ++p) {
    const auto& dtab = unary[pairs[p].d].table;
    const auto& etab = unary[pairs[p].e].table;
    for (std::size_t r = 0; r < nb; ++r) {
      const auto& rtab = binary[r].table;
      bool ok = true;
      for (Element a = 0; a < n && ok; ++a) {
        Element v = rtab[static_cast<std::size_t>(a) * n + a];
        ok = dtab[static_cast<std::size_t>(v)] == etab[static_cast<std::size_t>(v)];
      }
      diag_ok[p * nb + r] = ok ? 1 : 0;
      if (!ok) continue;
      std::vector<std::uint64_t> mask(offdiag_words, 0);
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (a == b) continue;
          Element v = rtab[static_cast<std::size_t>(a) * n + b];
          if (dtab[static_cast<std::size_t>(v)] != etab[static_cast<std::size_t>(v)]) {
            std::size_t bit = static_cast<std::size_t>(a) * n + b;
            mask[bit / 64] |= std::uint64_t{1} << (bit % 64);
          }
        }
      }
      dist[p * nb + r] = std::move(mask);
    }
  }

  for (int d = 0; d <= depth; ++d) {
    for (int si = 1; si <= max_i; ++si) {
      if (static_cast<std::size_t>(si) > np) break;
      for (int sj = 1; sj <= max_j; ++sj) {
        if (static_cast<std::size_t>(sj) > nb) break;
        std::vector<std::size_t> ti(static_cast<std::size_t>(si));
        for (std::size_t i = 0; i < ti.size(); ++i) ti[i] = i;
        do {
          int tau_depth = 0;
          for (std::size_t i : ti) tau_depth = std::max(tau_depth, pairs[i].depth);
          if (tau_depth > d) continue;
          std::vector<std::size_t> rj(static_cast<std::size_t>(sj));
          for (std::size_t j = 0; j < rj.size(); ++j) rj[j] = j;
          do {
            int cand_depth = tau_depth;
            for (std::size_t j : rj) {
              cand_depth = std::max(cand_depth, binary[j].depth);
            }
            if (cand_depth != d) continue;  // tried earlier or out of level
            if (++result.candidates_tried > limits().candidate_budget) {
              result.status = TransformerSearch::Status::inconclusive;
              return result;
            }
            bool viable = true;
            std::vector<std::uint64_t> cover(offdiag_words, 0);
            for (std::size_t i : ti) {
              for (std::size_t j : rj) {
                if (!diag_ok[i * nb + j]) {
                  viable = false;
                  break;
                }
                const auto& mask = dist[i * nb + j];
                for (std::size_t w = 0; w < offdiag_words; ++w) cover[w] |= mask[w];
              }
              if (!viable) break;
            }
            if (!viable) continue;
            if (cover == target) {
              TransformerWitness w;
              for (std::size_t i : ti) {
                w.tau.pairs.emplace_back(unary[pairs[i].d].term,
                                         unary[pairs[i].e].term);
              }
              for (std::size_t j : rj) w.rho.terms.push_back(binary[j].term);
              result.status = TransformerSearch::Status::found;
              result.witness = std::move(w);
              return result;
            }
          } while (detail::next_combination(rj, nb));
        } while (detail::next_combination(ti, np));
      }
    }
  }
  result.status = TransformerSearch::Status::none;
  return result;
}

}  // namespace ualg
