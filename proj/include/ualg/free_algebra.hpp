#pragma once

#include <map>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"
#include "ualg/term.hpp"

namespace ualg {

// The free 2-generated algebra of the variety generated by A, realized as
// the subalgebra of A^(A x A) generated by the two projection tuples.  The
// full power is never materialized: elements are discovered by closure.
//
// Element i is the binary term function tuples[i] (coordinate (a,b) at index
// a*|A|+b), and provenance[i] is a term in variables x0, x1 inducing it.
struct FreeAlgebra {
  FiniteAlgebra algebra;  // universe {0..m-1} in discovery order
  int gen_x = 0;
  int gen_y = 0;
  std::vector<std::vector<Element>> tuples;
  std::vector<Term> provenance;

  // Evaluation at (a,b): the unique homomorphism to A with x -> a, y -> b.
  std::vector<Element> evaluation_hom(const FiniteAlgebra& A, Element a,
                                      Element b) const {
    std::size_t coord = static_cast<std::size_t>(a) *
                            static_cast<std::size_t>(A.size) +
                        static_cast<std::size_t>(b);
    std::vector<Element> h(tuples.size());
    for (std::size_t e = 0; e < tuples.size(); ++e) h[e] = tuples[e][coord];
    return h;
  }
};

inline FreeAlgebra free_algebra_2gen(const FiniteAlgebra& A) {
  std::size_t len = static_cast<std::size_t>(A.size) * static_cast<std::size_t>(A.size);
  if (len > limits().max_universe) {
    throw BudgetError("free_algebra_2gen: tuple length exceeds configured bound");
  }
  FreeAlgebra F;
  std::map<std::vector<Element>, int> index;
  auto add = [&](std::vector<Element> tuple, Term origin) -> int {
    auto it = index.find(tuple);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(F.tuples.size());
    if (static_cast<std::size_t>(id) >= limits().max_universe) {
      throw BudgetError("free_algebra_2gen: closure exceeds configured bound");
    }
    index.emplace(tuple, id);
    F.tuples.push_back(std::move(tuple));
    F.provenance.push_back(std::move(origin));
    return id;
  };

  std::vector<Element> proj_x(len), proj_y(len);
  for (Element a = 0; a < A.size; ++a) {
    for (Element b = 0; b < A.size; ++b) {
      std::size_t coord = static_cast<std::size_t>(a) *
                              static_cast<std::size_t>(A.size) +
                          static_cast<std::size_t>(b);
      proj_x[coord] = a;
      proj_y[coord] = b;
    }
  }
  F.gen_x = add(std::move(proj_x), Term::variable(0));
  F.gen_y = add(std::move(proj_y), Term::variable(1));

  // Closure under all operations, coordinatewise.
  for (std::size_t frozen = 0; frozen < F.tuples.size();) {
    std::size_t limit = F.tuples.size();
    for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
      int r = A.signature.symbols[s].arity;
      std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
      while (true) {
        std::vector<Element> out(len);
        std::vector<Element> args(static_cast<std::size_t>(r));
        for (std::size_t coord = 0; coord < len; ++coord) {
          for (int i = 0; i < r; ++i) {
            args[static_cast<std::size_t>(i)] =
                F.tuples[idx[static_cast<std::size_t>(i)]][coord];
          }
          out[coord] = A.apply(static_cast<int>(s), args);
        }
        std::vector<Term> arg_terms;
        arg_terms.reserve(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) {
          arg_terms.push_back(F.provenance[idx[static_cast<std::size_t>(i)]]);
        }
        add(std::move(out),
            Term::apply(A.signature.symbols[s].name, std::move(arg_terms)));
        if (r == 0) break;
        int pos = r - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == limit) {
          idx[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    if (F.tuples.size() == limit) break;
    frozen = limit;
  }

  // Tabulate the induced algebra on the closure.
  FiniteAlgebra& B = F.algebra;
  B.name = A.name.empty() ? "free2" : "free2(" + A.name + ")";
  B.size = static_cast<int>(F.tuples.size());
  B.signature = A.signature;
  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    int r = A.signature.symbols[s].arity;
    std::size_t rows = 1;
    for (int i = 0; i < r; ++i) rows *= static_cast<std::size_t>(B.size);
    std::vector<Element> table(rows);
    for (std::size_t row = 0; row < rows; ++row) {
      auto arg_ids = decode_tuple(row, B.size, r);
      std::vector<Element> out(len);
      std::vector<Element> args(static_cast<std::size_t>(r));
      for (std::size_t coord = 0; coord < len; ++coord) {
        for (int i = 0; i < r; ++i) {
          args[static_cast<std::size_t>(i)] =
              F.tuples[static_cast<std::size_t>(arg_ids[static_cast<std::size_t>(i)])]
                      [coord];
        }
        out[coord] = A.apply(static_cast<int>(s), args);
      }
      table[row] = index.at(out);
    }
    B.tables.push_back(std::move(table));
  }
  return F;
}

}  // namespace ualg
