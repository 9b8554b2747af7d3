#pragma once

#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/term.hpp"
#include "ualg/transformers.hpp"

namespace ualg {

// Small stock algebras used throughout the test batteries and as the default
// search catalog.

inline FiniteAlgebra empty_signature_algebra(int size) {
  FiniteAlgebra A;
  A.name = "set" + std::to_string(size);
  A.size = size;
  A.validate();
  return A;
}

// Two-element meet-semilattice: and only.
inline FiniteAlgebra two_element_meet_semilattice() {
  FiniteAlgebra A;
  A.name = "meet2";
  A.size = 2;
  A.signature = Signature{{"and", 2}};
  A.tables = {{0, 0, 0, 1}};
  A.validate();
  return A;
}

// Two-element lattice: and, or.
inline FiniteAlgebra two_element_lattice() {
  FiniteAlgebra A;
  A.name = "lattice2";
  A.size = 2;
  A.signature = Signature{{"and", 2}, {"or", 2}};
  A.tables = {{0, 0, 0, 1}, {0, 1, 1, 1}};
  A.validate();
  return A;
}

// Two-element Boolean algebra: and, or, not, one, imp.
inline FiniteAlgebra boolean_b2() {
  FiniteAlgebra A;
  A.name = "b2";
  A.size = 2;
  A.signature = Signature{{"and", 2}, {"or", 2}, {"not", 1}, {"one", 0}, {"imp", 2}};
  A.tables = {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0}, {1}, {1, 1, 0, 1}};
  A.validate();
  return A;
}

// Three-element cyclic successor: succ(x) = x + 1 mod 3.
inline FiniteAlgebra cyclic_successor3() {
  FiniteAlgebra A;
  A.name = "succ3";
  A.size = 3;
  A.signature = Signature{{"succ", 1}};
  A.tables = {{1, 2, 0}};
  A.validate();
  return A;
}

// Empty-signature algebras of sizes 1-4, the two-element lattice, the
// Boolean algebra and the successor cycle.
inline std::vector<FiniteAlgebra> default_catalog() {
  std::vector<FiniteAlgebra> out;
  for (int size = 1; size <= 4; ++size) out.push_back(empty_signature_algebra(size));
  out.push_back(two_element_lattice());
  out.push_back(boolean_b2());
  out.push_back(cyclic_successor3());
  return out;
}

// The classical Boolean witness: tau(x) = {(x, 1)},
// rho(x,y) = {x -> y, y -> x}.
inline TransformerTau boolean_tau() {
  TransformerTau tau;
  tau.pairs.emplace_back(Term::variable(0), Term::apply("one"));
  return tau;
}

inline TransformerRho boolean_rho() {
  TransformerRho rho;
  rho.terms.push_back(Term::apply("imp", {Term::variable(0), Term::variable(1)}));
  rho.terms.push_back(Term::apply("imp", {Term::variable(1), Term::variable(0)}));
  return rho;
}

}  // namespace ualg
