#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/binrel.hpp"
#include "ualg/common.hpp"
#include "ualg/congruence.hpp"
#include "ualg/matrix_power.hpp"
#include "ualg/partition.hpp"
#include "ualg/transformers.hpp"

namespace ualg {

// A formal equation side in the binary symbols ^ (meet), * (compose) and
// + (join over congruence generation).
struct CongTerm {
  enum class Kind { variable, meet, compose, join };
  Kind kind = Kind::variable;
  std::string var;
  std::vector<CongTerm> children;  // two for the binary kinds

  static CongTerm variable(std::string name) {
    CongTerm t;
    t.var = std::move(name);
    return t;
  }
  static CongTerm node(Kind k, CongTerm l, CongTerm r) {
    CongTerm t;
    t.kind = k;
    t.children.push_back(std::move(l));
    t.children.push_back(std::move(r));
    return t;
  }
};

inline bool operator==(const CongTerm& a, const CongTerm& b) {
  return a.kind == b.kind && a.var == b.var && a.children == b.children;
}

struct CongEquation {
  CongTerm lhs;
  CongTerm rhs;
  std::vector<std::string> variables;  // order of first appearance, lhs first
};

inline bool operator==(const CongEquation& a, const CongEquation& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs && a.variables == b.variables;
}

struct ParseError : Error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& msg)
      : Error("parse error at position " + std::to_string(pos) + ": " + msg),
        position(pos) {}
};

namespace detail {

// Grammar: variables [a-z][a-z0-9]*; precedence ^ > * > +, left-associative;
// '=' separates the two sides; whitespace insignificant.
struct CongParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  CongTerm primary() {
    skip_ws();
    if (pos >= text.size()) throw ParseError(pos, "expected a variable or '('");
    if (eat('(')) {
      CongTerm t = join_expr();
      if (!eat(')')) throw ParseError(pos, "expected ')'");
      return t;
    }
    char c = text[pos];
    if (c < 'a' || c > 'z') {
      throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
    std::size_t start = pos;
    ++pos;
    while (pos < text.size() &&
           ((text[pos] >= 'a' && text[pos] <= 'z') ||
            (text[pos] >= '0' && text[pos] <= '9'))) {
      ++pos;
    }
    return CongTerm::variable(std::string(text.substr(start, pos - start)));
  }
  CongTerm meet_expr() {
    CongTerm t = primary();
    while (eat('^')) t = CongTerm::node(CongTerm::Kind::meet, std::move(t), primary());
    return t;
  }
  CongTerm compose_expr() {
    CongTerm t = meet_expr();
    while (eat('*')) {
      t = CongTerm::node(CongTerm::Kind::compose, std::move(t), meet_expr());
    }
    return t;
  }
  CongTerm join_expr() {
    CongTerm t = compose_expr();
    while (eat('+')) {
      t = CongTerm::node(CongTerm::Kind::join, std::move(t), compose_expr());
    }
    return t;
  }
};

inline void collect_variables(const CongTerm& t, std::vector<std::string>& out) {
  if (t.kind == CongTerm::Kind::variable) {
    if (std::find(out.begin(), out.end(), t.var) == out.end()) out.push_back(t.var);
    return;
  }
  for (const CongTerm& c : t.children) collect_variables(c, out);
}

}  // namespace detail

inline CongEquation parse_cong_equation(std::string_view text) {
  detail::CongParser p{text, 0};
  p.skip_ws();
  if (p.peek('=')) throw ParseError(p.pos, "empty left-hand side");
  CongEquation eq;
  eq.lhs = p.join_expr();
  if (!p.eat('=')) throw ParseError(p.pos, "expected '='");
  p.skip_ws();
  if (p.pos >= text.size()) throw ParseError(p.pos, "empty right-hand side");
  eq.rhs = p.join_expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError(p.pos, "trailing input");
  detail::collect_variables(eq.lhs, eq.variables);
  detail::collect_variables(eq.rhs, eq.variables);
  return eq;
}

namespace detail {
inline int precedence(CongTerm::Kind k) {
  switch (k) {
    case CongTerm::Kind::variable: return 4;
    case CongTerm::Kind::meet: return 3;
    case CongTerm::Kind::compose: return 2;
    case CongTerm::Kind::join: return 1;
  }
  return 0;
}
inline void render(const CongTerm& t, int parent_prec, std::string& out) {
  if (t.kind == CongTerm::Kind::variable) {
    out += t.var;
    return;
  }
  int prec = precedence(t.kind);
  bool parens = prec < parent_prec;
  if (parens) out += '(';
  render(t.children[0], prec, out);
  out += t.kind == CongTerm::Kind::meet      ? " ^ "
         : t.kind == CongTerm::Kind::compose ? " * "
                                             : " + ";
  render(t.children[1], prec + 1, out);
  if (parens) out += ')';
}
}  // namespace detail

inline std::string to_string(const CongEquation& eq) {
  std::string out;
  detail::render(eq.lhs, 0, out);
  out += " = ";
  detail::render(eq.rhs, 0, out);
  return out;
}

// Recursive evaluation over Rel(A).  Variables must be congruences; meet and
// compose are plain relation operations, and join is congruence generation
// of the union (legal for arbitrary relations).
inline BinRel eval_cong_term(const FiniteAlgebra& A, const CongTerm& t,
                             const std::map<std::string, Partition>& env) {
  switch (t.kind) {
    case CongTerm::Kind::variable: {
      auto it = env.find(t.var);
      if (it == env.end()) throw Error("eval: unassigned variable " + t.var);
      return BinRel::from_partition(it->second);
    }
    case CongTerm::Kind::meet:
      return intersect(eval_cong_term(A, t.children[0], env),
                       eval_cong_term(A, t.children[1], env));
    case CongTerm::Kind::compose:
      return compose(eval_cong_term(A, t.children[0], env),
                     eval_cong_term(A, t.children[1], env));
    case CongTerm::Kind::join:
      return rel_combine(RelOp::join, A, eval_cong_term(A, t.children[0], env),
                         eval_cong_term(A, t.children[1], env));
  }
  throw Error("eval: malformed term");
}

// Everything needed to replay a failing interpretation.
struct FailureCertificate {
  FiniteAlgebra algebra;
  CongEquation equation;
  std::vector<std::pair<std::string, Partition>> assignment;
  BinRel lhs_value;
  BinRel rhs_value;
  std::pair<Element, Element> discrepancy{-1, -1};
};

inline bool validate_certificate(const FailureCertificate& cert) {
  cert.algebra.validate();
  std::map<std::string, Partition> env;
  for (const auto& [name, p] : cert.assignment) {
    if (p.n != cert.algebra.size || !is_congruence(cert.algebra, p)) return false;
    env.emplace(name, p);
  }
  for (const std::string& v : cert.equation.variables) {
    if (env.find(v) == env.end()) return false;
  }
  BinRel lhs = eval_cong_term(cert.algebra, cert.equation.lhs, env);
  BinRel rhs = eval_cong_term(cert.algebra, cert.equation.rhs, env);
  if (lhs != cert.lhs_value || rhs != cert.rhs_value) return false;
  if (lhs == rhs) return false;
  auto [a, b] = cert.discrepancy;
  return lhs.contains(a, b) != rhs.contains(a, b);
}

struct EquationCheck {
  enum class Status { satisfied, failed, inconclusive };
  Status status = Status::satisfied;
  std::optional<FailureCertificate> certificate;
  std::size_t assignments_checked = 0;
};

namespace detail {
inline std::pair<Element, Element> least_discrepancy(const BinRel& lhs,
                                                     const BinRel& rhs) {
  for (Element a = 0; a < lhs.n; ++a) {
    for (Element b = 0; b < lhs.n; ++b) {
      if (lhs.contains(a, b) != rhs.contains(a, b)) return {a, b};
    }
  }
  throw Error("least_discrepancy: relations are equal");
}
}  // namespace detail

// Quantify over all assignments of congruences to the equation's variables,
// in canonical order: Con(A) sorted lexicographically, variables in order of
// first appearance, last variable varying fastest.  Returns the first
// failure.
inline EquationCheck check_equation(const FiniteAlgebra& A,
                                    const CongEquation& eq) {
  EquationCheck result;
  try {
    ConLattice L = con(A);
    std::size_t vars = eq.variables.size();
    std::size_t total = 1;
    for (std::size_t v = 0; v < vars; ++v) {
      if (total > limits().assignment_budget / std::max<std::size_t>(L.size(), 1)) {
        throw BudgetError("check_equation: assignment budget exceeded");
      }
      total *= L.size();
    }
    std::vector<std::size_t> idx(vars, 0);
    while (true) {
      ++result.assignments_checked;
      if (result.assignments_checked > limits().assignment_budget) {
        throw BudgetError("check_equation: assignment budget exceeded");
      }
      std::map<std::string, Partition> env;
      for (std::size_t v = 0; v < vars; ++v) {
        env.emplace(eq.variables[v], L.congruences[idx[v]]);
      }
      BinRel lhs = eval_cong_term(A, eq.lhs, env);
      BinRel rhs = eval_cong_term(A, eq.rhs, env);
      if (lhs != rhs) {
        FailureCertificate cert;
        cert.algebra = A;
        cert.equation = eq;
        for (std::size_t v = 0; v < vars; ++v) {
          cert.assignment.emplace_back(eq.variables[v], L.congruences[idx[v]]);
        }
        cert.discrepancy = detail::least_discrepancy(lhs, rhs);
        cert.lhs_value = std::move(lhs);
        cert.rhs_value = std::move(rhs);
        result.status = EquationCheck::Status::failed;
        result.certificate = std::move(cert);
        return result;
      }
      std::size_t v = vars;
      while (v-- > 0) {
        if (++idx[v] < L.size()) break;
        idx[v] = 0;
        if (v == 0) return result;  // odometer wrapped: satisfied
      }
      if (vars == 0) return result;  // no variables: single assignment
    }
  } catch (const BudgetError&) {
    result.status = EquationCheck::Status::inconclusive;
    result.certificate.reset();
    return result;
  }
}

// Scan a catalog in order for the first failing algebra.  A clean scan means
// the equation held on this catalog, not that it is trivial.
inline EquationCheck find_failure(std::span<const FiniteAlgebra> catalog,
                                  const CongEquation& eq) {
  EquationCheck overall;
  bool any_inconclusive = false;
  for (const FiniteAlgebra& A : catalog) {
    EquationCheck c = check_equation(A, eq);
    overall.assignments_checked += c.assignments_checked;
    if (c.status == EquationCheck::Status::failed) {
      c.assignments_checked = overall.assignments_checked;
      return c;
    }
    if (c.status == EquationCheck::Status::inconclusive) any_inconclusive = true;
  }
  overall.status = any_inconclusive ? EquationCheck::Status::inconclusive
                                    : EquationCheck::Status::satisfied;
  return overall;
}

// ---------------------------------------------------------------------------
// Lifting a failure through the second matrix power.

struct LiftReport {
  FailureCertificate base;
  FailureCertificate lifted;
  bool transformer_ok = false;
  std::optional<std::pair<Element, Element>> transformer_counterexample;
  bool ok() const { return transformer_ok; }
};

// Re-validates the certificate, lifts the assignment along
// alpha -> alpha (x) alpha, verifies that the lifted assignment falsifies
// the same equation in A^[2], and checks the standard transformer witness
// there.  A lift that fails to falsify would contradict the embedding and is
// reported as an implementation bug.
inline LiftReport lift_failure_check(const FailureCertificate& cert) {
  if (!validate_certificate(cert)) {
    throw Error("lift_failure_check: certificate does not validate");
  }
  LiftReport report;
  report.base = cert;

  MatrixPowerAlgebra M = matrix_power(cert.algebra, 2);
  std::map<std::string, Partition> lifted_env;
  FailureCertificate& lifted = report.lifted;
  lifted.algebra = M.result;
  lifted.equation = cert.equation;
  for (const auto& [name, p] : cert.assignment) {
    BinRel r = BinRel::from_partition(p);
    Partition lp = tensor(r, r).to_partition();
    if (!is_congruence(M.result, lp)) {
      throw Error("lift_failure_check: lifted relation is not a congruence "
                  "(implementation bug)");
    }
    lifted.assignment.emplace_back(name, lp);
    lifted_env.emplace(name, lp);
  }
  lifted.lhs_value = eval_cong_term(M.result, cert.equation.lhs, lifted_env);
  lifted.rhs_value = eval_cong_term(M.result, cert.equation.rhs, lifted_env);
  if (lifted.lhs_value == lifted.rhs_value) {
    throw Error("lift_failure_check: equation did not lift "
                "(implementation bug: contradicts the embedding)");
  }
  lifted.discrepancy = detail::least_discrepancy(lifted.lhs_value,
                                                 lifted.rhs_value);

  TransformerCheck t =
      check_transformers(M.result, matrix_power_tau(), matrix_power_rho());
  report.transformer_ok = t.ok;
  report.transformer_counterexample = t.counterexample;
  return report;
}

}  // namespace ualg
