#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/common.hpp"

namespace ualg {

// A term over an indexed variable pool v0, v1, ... and named operation
// symbols.  Variables carry no signature; applications are resolved by name
// against the algebra they are evaluated in.
struct Term {
  int var = -1;            // >= 0 for a variable
  std::string op;          // symbol name for an application
  std::vector<Term> args;

  bool is_var() const { return var >= 0; }

  static Term variable(int index) {
    Term t;
    t.var = index;
    return t;
  }
  static Term apply(std::string name, std::vector<Term> arguments = {}) {
    Term t;
    t.op = std::move(name);
    t.args = std::move(arguments);
    return t;
  }
};

inline bool operator==(const Term& a, const Term& b) {
  return a.var == b.var && a.op == b.op && a.args == b.args;
}

inline int max_var_index(const Term& t) {
  if (t.is_var()) return t.var;
  int m = -1;
  for (const Term& a : t.args) m = std::max(m, max_var_index(a));
  return m;
}

inline bool mentions_symbol(const Term& t, std::string_view name) {
  if (t.is_var()) return false;
  if (t.op == name) return true;
  for (const Term& a : t.args) {
    if (mentions_symbol(a, name)) return true;
  }
  return false;
}

inline int term_depth(const Term& t) {
  if (t.is_var()) return 0;
  int m = 0;
  for (const Term& a : t.args) m = std::max(m, term_depth(a));
  return m + 1;
}

inline Element eval_term(const FiniteAlgebra& A, const Term& t,
                         std::span<const Element> env) {
  if (t.is_var()) {
    if (static_cast<std::size_t>(t.var) >= env.size()) {
      throw Error("eval_term: no value for variable x" + std::to_string(t.var));
    }
    return env[static_cast<std::size_t>(t.var)];
  }
  int sym = A.signature.index_of(t.op);
  if (sym < 0) throw Error("eval_term: unknown symbol " + t.op);
  int arity = A.signature.symbols[static_cast<std::size_t>(sym)].arity;
  if (arity != static_cast<int>(t.args.size())) {
    throw Error("eval_term: " + t.op + " expects " + std::to_string(arity) +
                " arguments, got " + std::to_string(t.args.size()));
  }
  std::vector<Element> vals(t.args.size());
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    vals[i] = eval_term(A, t.args[i], env);
  }
  return A.apply(sym, vals);
}

// Replace variable i by subst[i] (variables beyond subst are kept).
inline Term substitute(const Term& t, std::span<const Term> subst) {
  if (t.is_var()) {
    if (static_cast<std::size_t>(t.var) < subst.size()) {
      return subst[static_cast<std::size_t>(t.var)];
    }
    return t;
  }
  Term out = Term::apply(t.op);
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back(substitute(a, subst));
  return out;
}

// ---------------------------------------------------------------------------
// Prefix syntax: "(imp x0 x1)", "x1", "one".  An identifier is a variable
// when it matches x<digits> and is not a symbol of the governing signature.

inline std::string to_prefix(const Term& t) {
  if (t.is_var()) return "x" + std::to_string(t.var);
  if (t.args.empty()) return "(" + t.op + ")";
  std::string out = "(" + t.op;
  for (const Term& a : t.args) {
    out += ' ';
    out += to_prefix(a);
  }
  out += ')';
  return out;
}

namespace detail {

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '\'';
}

inline bool looks_like_variable(std::string_view ident) {
  if (ident.size() < 2 || ident[0] != 'x') return false;
  for (std::size_t i = 1; i < ident.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(ident[i]))) return false;
  }
  return true;
}

struct TermParser {
  std::string_view text;
  std::size_t pos = 0;
  const Signature* sig = nullptr;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("term parse error at position " + std::to_string(pos) + ": " + msg);
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  std::string_view ident() {
    std::size_t start = pos;
    while (pos < text.size() && is_ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected identifier");
    return text.substr(start, pos - start);
  }
  Term atom(std::string_view name) const {
    bool in_sig = sig != nullptr && sig->index_of(name) >= 0;
    if (!in_sig && looks_like_variable(name)) {
      return Term::variable(std::stoi(std::string(name.substr(1))));
    }
    return Term::apply(std::string(name));
  }
  Term parse() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      skip_ws();
      std::string head(ident());
      Term t = Term::apply(head);
      while (true) {
        skip_ws();
        if (pos >= text.size()) fail("missing )");
        if (text[pos] == ')') {
          ++pos;
          return t;
        }
        t.args.push_back(parse());
      }
    }
    return atom(ident());
  }
};

}  // namespace detail

inline Term parse_term(std::string_view text, const Signature* sig = nullptr) {
  detail::TermParser p{text, 0, sig};
  Term t = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

// ---------------------------------------------------------------------------
// Unary polynomial: variable 0 is the free slot, variable i >= 1 denotes the
// fixed element constants[i-1].

struct Polynomial {
  Term term = Term::variable(0);
  std::vector<Element> constants;

  static Polynomial identity() { return Polynomial{}; }

  Element eval(const FiniteAlgebra& A, Element x) const {
    std::vector<Element> env;
    env.reserve(constants.size() + 1);
    env.push_back(x);
    env.insert(env.end(), constants.begin(), constants.end());
    return eval_term(A, term, env);
  }
};

namespace detail {
inline Term shift_poly_vars(const Term& t, int offset) {
  if (t.is_var()) {
    return t.var == 0 ? t : Term::variable(t.var + offset);
  }
  Term out = Term::apply(t.op);
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back(shift_poly_vars(a, offset));
  return out;
}
}  // namespace detail

// outer(inner(x)): substitute inner's term into outer's free slot, keeping
// both constant pools.
inline Polynomial compose(const Polynomial& outer, const Polynomial& inner) {
  Polynomial r;
  r.constants = outer.constants;
  r.constants.insert(r.constants.end(), inner.constants.begin(),
                     inner.constants.end());
  Term shifted = detail::shift_poly_vars(inner.term,
                                         static_cast<int>(outer.constants.size()));
  std::vector<Term> subst = {shifted};
  r.term = substitute(outer.term, subst);
  return r;
}

}  // namespace ualg
