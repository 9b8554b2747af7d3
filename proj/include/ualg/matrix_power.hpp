#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"
#include "ualg/congruence.hpp"
#include "ualg/term.hpp"
#include "ualg/term_enum.hpp"

namespace ualg {

// A tuple of n terms, each over k*n variables: the data of an n-tuple
// operation of arity k on the matrix power.
struct TermTuple {
  int k = 1;
  std::vector<Term> components;
};

// The n-th matrix power of A on row-major encoded n-tuples, presented with a
// finite generating signature: every base symbol lifted coordinatewise, plus
// splice(x,y) = <y1,x2,..,xn> and shift(x) = <x2,..,xn,x1>.  For n = 2 the
// named operations arrow(x,y) = <x1,y1>, backarrow(x,y) = <x2,y2> and
// box(x) = <x2,x1> are also basic.
struct MatrixPowerAlgebra {
  FiniteAlgebra base;
  int exponent = 1;
  FiniteAlgebra result;

  Element encode(std::span<const Element> tuple) const {
    return static_cast<Element>(encode_tuple(tuple, base.size));
  }
  std::vector<Element> decode(Element code) const {
    return decode_tuple(static_cast<std::size_t>(code), base.size, exponent);
  }
};

namespace detail {

// Tabulate an arity-r operation on the tuple universe from its action on
// decoded tuples.
template <typename Fn>
std::vector<Element> tabulate_tuple_op(int base_size, int n, std::size_t N,
                                       int r, Fn&& act) {
  std::size_t rows = 1;
  for (int i = 0; i < r; ++i) rows *= N;
  std::vector<Element> table(rows);
  std::vector<std::vector<Element>> args(static_cast<std::size_t>(r));
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t rest = row;
    for (int i = r - 1; i >= 0; --i) {
      args[static_cast<std::size_t>(i)] = decode_tuple(rest % N, base_size, n);
      rest /= N;
    }
    std::vector<Element> out = act(args);
    table[row] = static_cast<Element>(encode_tuple(out, base_size));
  }
  return table;
}

}  // namespace detail

inline MatrixPowerAlgebra matrix_power(const FiniteAlgebra& A, int n) {
  if (n < 1) throw Error("matrix_power: exponent must be >= 1");
  std::size_t N = checked_power(static_cast<std::size_t>(A.size), n,
                                limits().max_universe, "matrix_power");
  std::vector<std::string> reserved = {"splice", "shift"};
  if (n == 2) {
    reserved.push_back("arrow");
    reserved.push_back("backarrow");
    reserved.push_back("box");
  }
  for (const auto& r : reserved) {
    if (A.signature.index_of(r) >= 0) {
      throw Error("matrix_power: base signature already uses the name " + r);
    }
  }

  MatrixPowerAlgebra M;
  M.base = A;
  M.exponent = n;
  FiniteAlgebra& R = M.result;
  R.name = (A.name.empty() ? std::string("alg") : A.name) + "^[" +
           std::to_string(n) + "]";
  R.size = static_cast<int>(N);

  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    const auto& sym = A.signature.symbols[s];
    R.signature.symbols.push_back(sym);
    if (sym.arity == 0) {
      std::vector<Element> c(static_cast<std::size_t>(n), A.tables[s][0]);
      R.tables.push_back({static_cast<Element>(encode_tuple(c, A.size))});
      continue;
    }
    R.tables.push_back(detail::tabulate_tuple_op(
        A.size, n, N, sym.arity, [&](const std::vector<std::vector<Element>>& args) {
          std::vector<Element> out(static_cast<std::size_t>(n));
          std::vector<Element> coord(args.size());
          for (int i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < args.size(); ++j) {
              coord[j] = args[j][static_cast<std::size_t>(i)];
            }
            out[static_cast<std::size_t>(i)] = A.apply(static_cast<int>(s), coord);
          }
          return out;
        }));
  }

  R.signature.symbols.push_back({"splice", 2});
  R.tables.push_back(detail::tabulate_tuple_op(
      A.size, n, N, 2, [&](const std::vector<std::vector<Element>>& args) {
        std::vector<Element> out = args[0];
        out[0] = args[1][0];
        return out;
      }));

  R.signature.symbols.push_back({"shift", 1});
  R.tables.push_back(detail::tabulate_tuple_op(
      A.size, n, N, 1, [&](const std::vector<std::vector<Element>>& args) {
        std::vector<Element> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          out[static_cast<std::size_t>(i)] =
              args[0][static_cast<std::size_t>((i + 1) % n)];
        }
        return out;
      }));

  if (n == 2) {
    R.signature.symbols.push_back({"arrow", 2});
    R.tables.push_back(detail::tabulate_tuple_op(
        A.size, n, N, 2, [&](const std::vector<std::vector<Element>>& args) {
          return std::vector<Element>{args[0][0], args[1][0]};
        }));
    R.signature.symbols.push_back({"backarrow", 2});
    R.tables.push_back(detail::tabulate_tuple_op(
        A.size, n, N, 2, [&](const std::vector<std::vector<Element>>& args) {
          return std::vector<Element>{args[0][1], args[1][1]};
        }));
    R.signature.symbols.push_back({"box", 1});
    R.tables.push_back(detail::tabulate_tuple_op(
        A.size, n, N, 1, [&](const std::vector<std::vector<Element>>& args) {
          return std::vector<Element>{args[0][1], args[0][0]};
        }));

    // Build-time consistency: arrow(x,y) = shift(splice(shift(x), y)) and
    // backarrow(x,y) = arrow(box(x), box(y)), as tables.
    const Term x = Term::variable(0), y = Term::variable(1);
    Term arrow_derived = Term::apply(
        "shift", {Term::apply("splice", {Term::apply("shift", {x}), y})});
    Term backarrow_derived = Term::apply(
        "arrow", {Term::apply("box", {x}), Term::apply("box", {y})});
    for (Element u = 0; u < R.size; ++u) {
      for (Element v = 0; v < R.size; ++v) {
        std::vector<Element> env{u, v};
        std::size_t row = encode_tuple(env, R.size);
        int ai = R.signature.index_of("arrow");
        int bi = R.signature.index_of("backarrow");
        if (eval_term(R, arrow_derived, env) !=
                R.tables[static_cast<std::size_t>(ai)][row] ||
            eval_term(R, backarrow_derived, env) !=
                R.tables[static_cast<std::size_t>(bi)][row]) {
          throw Error("matrix_power: generating-signature consistency check failed");
        }
      }
    }
  }
  return M;
}

// The operation m_t on the tuple universe: component i of the output is t_i
// evaluated at the concatenated coordinates of the k input tuples.
inline std::vector<Element> m_t_table(const FiniteAlgebra& A, int n,
                                      const TermTuple& t) {
  if (n < 1) throw Error("m_t_table: exponent must be >= 1");
  if (t.k < 1) throw Error("m_t_table: arity must be a positive multiple of n");
  if (static_cast<int>(t.components.size()) != n) {
    throw Error("m_t_table: expected " + std::to_string(n) + " component terms");
  }
  for (const Term& c : t.components) {
    if (max_var_index(c) >= t.k * n) {
      throw Error("m_t_table: component uses a variable beyond k*n");
    }
  }
  std::size_t N = checked_power(static_cast<std::size_t>(A.size), n,
                                limits().max_universe, "m_t_table");
  return detail::tabulate_tuple_op(
      A.size, n, N, t.k, [&](const std::vector<std::vector<Element>>& args) {
        std::vector<Element> env;
        env.reserve(static_cast<std::size_t>(t.k * n));
        for (const auto& a : args) env.insert(env.end(), a.begin(), a.end());
        std::vector<Element> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          out[static_cast<std::size_t>(i)] =
              eval_term(A, t.components[static_cast<std::size_t>(i)], env);
        }
        return out;
      });
}

// The TermTuple whose m_t realizes a basic operation of the generating
// signature (lifted nullaries are realized with k = 1 and constant terms).
inline TermTuple defining_term_tuple(const MatrixPowerAlgebra& M,
                                     std::string_view op_name) {
  int n = M.exponent;
  TermTuple t;
  auto var = [](int i) { return Term::variable(i); };
  if (op_name == "splice") {
    t.k = 2;
    t.components.push_back(var(n));
    for (int i = 1; i < n; ++i) t.components.push_back(var(i));
    return t;
  }
  if (op_name == "shift") {
    t.k = 1;
    for (int i = 0; i < n; ++i) t.components.push_back(var((i + 1) % n));
    return t;
  }
  if (n == 2 && op_name == "arrow") {
    t.k = 2;
    t.components = {var(0), var(2)};
    return t;
  }
  if (n == 2 && op_name == "backarrow") {
    t.k = 2;
    t.components = {var(1), var(3)};
    return t;
  }
  if (n == 2 && op_name == "box") {
    t.k = 1;
    t.components = {var(1), var(0)};
    return t;
  }
  int s = M.base.signature.index_of(op_name);
  if (s < 0) throw Error("defining_term_tuple: unknown operation " +
                         std::string(op_name));
  int r = M.base.signature.symbols[static_cast<std::size_t>(s)].arity;
  if (r == 0) {
    t.k = 1;
    for (int i = 0; i < n; ++i) {
      t.components.push_back(Term::apply(std::string(op_name)));
    }
    return t;
  }
  t.k = r;
  for (int i = 0; i < n; ++i) {
    std::vector<Term> args;
    for (int j = 0; j < r; ++j) args.push_back(var(j * n + i));
    t.components.push_back(Term::apply(std::string(op_name), std::move(args)));
  }
  return t;
}

enum class Ternary { yes, no, unknown };

// Does some term over A's signature, up to the depth bound, induce `table`?
// `unknown` reports an exhausted enumeration budget, as opposed to an
// exhaustive negative.
inline Ternary is_generated_operation(const FiniteAlgebra& A,
                                      const std::vector<Element>& table,
                                      int depth) {
  std::size_t rows = table.size();
  int arity = 0;
  std::size_t acc = 1;
  while (acc < rows) {
    acc *= static_cast<std::size_t>(A.size);
    ++arity;
  }
  if (acc != rows || arity < 1) {
    throw Error("is_generated_operation: table size is not a positive power of "
                "the universe size");
  }
  try {
    for (const TermFunction& f : distinct_term_functions(A, arity, depth)) {
      if (f.table == table) return Ternary::yes;
    }
    return Ternary::no;
  } catch (const BudgetError&) {
    return Ternary::unknown;
  }
}

// ---------------------------------------------------------------------------
// The embedding lambda(alpha) = alpha (x) alpha of Rel(A) into Rel(A^[2]).

struct LambdaViolation {
  std::string check;
  int alpha = -1;
  int beta = -1;
};

struct LambdaReport {
  std::string algebra;
  std::size_t congruence_count = 0;
  std::size_t pairs_checked = 0;
  std::vector<LambdaViolation> violations;
  bool ok() const { return violations.empty(); }
};

// For all congruence pairs of A: lambda maps into Con(A^[2]) injectively and
// preserves meet, compose and join (join on the matrix-power side computed
// by congruence generation there).
inline LambdaReport verify_lambda_embedding(const FiniteAlgebra& A) {
  MatrixPowerAlgebra M = matrix_power(A, 2);
  ConLattice L = con(A);
  LambdaReport report;
  report.algebra = A.name;
  report.congruence_count = L.size();

  std::vector<BinRel> rel;
  std::vector<BinRel> lifted;
  rel.reserve(L.size());
  for (const Partition& p : L.congruences) {
    BinRel r = BinRel::from_partition(p);
    lifted.push_back(tensor(r, r));
    rel.push_back(std::move(r));
  }

  for (std::size_t i = 0; i < L.size(); ++i) {
    Partition as_partition = lifted[i].to_partition();
    if (BinRel::from_partition(as_partition) != lifted[i] ||
        !is_congruence(M.result, as_partition)) {
      report.violations.push_back({"congruence", static_cast<int>(i), -1});
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (lifted[i] == lifted[j]) {
        report.violations.push_back(
            {"injectivity", static_cast<int>(i), static_cast<int>(j)});
      }
    }
  }

  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = 0; j < L.size(); ++j) {
      ++report.pairs_checked;
      const BinRel& a = rel[i];
      const BinRel& b = rel[j];
      BinRel meet_then_lift = tensor(intersect(a, b), intersect(a, b));
      if (meet_then_lift != intersect(lifted[i], lifted[j])) {
        report.violations.push_back(
            {"meet", static_cast<int>(i), static_cast<int>(j)});
      }
      BinRel comp = compose(a, b);
      if (tensor(comp, comp) != compose(lifted[i], lifted[j])) {
        report.violations.push_back(
            {"compose", static_cast<int>(i), static_cast<int>(j)});
      }
      BinRel join_then_lift = BinRel::from_partition(
          join_congruences(A, L.congruences[i], L.congruences[j]));
      join_then_lift = tensor(join_then_lift, join_then_lift);
      if (join_then_lift != rel_combine(RelOp::join, M.result, lifted[i], lifted[j])) {
        report.violations.push_back(
            {"join", static_cast<int>(i), static_cast<int>(j)});
      }
    }
  }
  return report;
}

}  // namespace ualg
