#pragma once

#include <map>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"
#include "ualg/term.hpp"

namespace ualg {

// A term together with the function table it induces on a fixed algebra.
struct TermFunction {
  Term term;
  int depth = 0;
  std::vector<Element> table;  // indexed by row-major argument tuple
};

// Enumerate all terms of the given arity up to the given nesting depth,
// deduplicated by induced function table.  Canonical order: by depth, then
// by signature-symbol order, then by argument order; each table keeps its
// first (least) term as representative.
//
// Composites are built from representatives only.  Tables depend only on
// argument tables, so nothing is lost, and representative depths never
// exceed the depth of the term they replace.
inline std::vector<TermFunction> distinct_term_functions(const FiniteAlgebra& A,
                                                         int arity, int depth) {
  if (arity < 1) throw Error("distinct_term_functions: arity must be >= 1");
  if (depth < 0) throw Error("distinct_term_functions: negative depth");
  std::size_t rows = checked_power(static_cast<std::size_t>(A.size), arity,
                                   limits().max_universe,
                                   "distinct_term_functions");
  std::vector<TermFunction> reps;
  std::map<std::vector<Element>, int> seen;
  std::size_t candidates = 0;
  auto offer = [&](Term term, int level, std::vector<Element> table) {
    if (++candidates > limits().term_budget) {
      throw BudgetError("distinct_term_functions: enumeration budget exceeded");
    }
    if (seen.emplace(table, static_cast<int>(reps.size())).second) {
      reps.push_back(TermFunction{std::move(term), level, std::move(table)});
    }
  };

  for (int v = 0; v < arity; ++v) {
    std::vector<Element> table(rows);
    for (std::size_t row = 0; row < rows; ++row) {
      table[row] = decode_tuple(row, A.size, arity)[static_cast<std::size_t>(v)];
    }
    offer(Term::variable(v), 0, std::move(table));
  }

  for (int level = 1; level <= depth; ++level) {
    std::size_t prev = reps.size();  // representatives of depth < level
    for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
      int r = A.signature.symbols[s].arity;
      if (r == 0) {
        if (level == 1) {
          offer(Term::apply(A.signature.symbols[s].name), 1,
                std::vector<Element>(rows, A.tables[s][0]));
        }
        continue;
      }
      std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
      while (true) {
        bool fresh = false;  // at least one argument from the previous level
        for (std::size_t i : idx) {
          if (reps[i].depth == level - 1) fresh = true;
        }
        if (fresh) {
          std::vector<Element> table(rows);
          std::vector<Element> args(static_cast<std::size_t>(r));
          for (std::size_t row = 0; row < rows; ++row) {
            for (int i = 0; i < r; ++i) {
              args[static_cast<std::size_t>(i)] =
                  reps[idx[static_cast<std::size_t>(i)]].table[row];
            }
            table[row] = A.apply(static_cast<int>(s), args);
          }
          std::vector<Term> arg_terms;
          arg_terms.reserve(static_cast<std::size_t>(r));
          for (std::size_t i : idx) arg_terms.push_back(reps[i].term);
          offer(Term::apply(A.signature.symbols[s].name, std::move(arg_terms)),
                level, std::move(table));
        }
        int pos = r - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == prev) {
          idx[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
  }
  return reps;
}

}  // namespace ualg
