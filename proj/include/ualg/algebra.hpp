#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/common.hpp"

namespace ualg {

struct OpSymbol {
  std::string name;
  int arity = 0;
};

inline bool operator==(const OpSymbol& a, const OpSymbol& b) {
  return a.name == b.name && a.arity == b.arity;
}

// An ordered sequence of operation symbols.  The order is significant: it is
// the tie-breaker for every canonical enumeration in the library.
struct Signature {
  std::vector<OpSymbol> symbols;

  Signature() = default;
  Signature(std::initializer_list<OpSymbol> syms) : symbols(syms) { validate(); }
  explicit Signature(std::vector<OpSymbol> syms) : symbols(std::move(syms)) {
    validate();
  }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (symbols[i].name == name) return static_cast<int>(i);
    }
    return -1;
  }

  void validate() const {
    std::set<std::string> seen;
    for (const auto& s : symbols) {
      if (s.arity < 0) throw Error("signature: negative arity for " + s.name);
      if (s.name.empty()) throw Error("signature: empty symbol name");
      if (!seen.insert(s.name).second) {
        throw Error("signature: duplicate symbol " + s.name);
      }
    }
  }
};

inline bool operator==(const Signature& a, const Signature& b) {
  return a.symbols == b.symbols;
}

// A finite algebra: universe {0..size-1} and one flat row-major table per
// symbol.  Arity-0 tables have length 1.  Immutable by convention once built.
struct FiniteAlgebra {
  std::string name;
  int size = 1;
  Signature signature;
  std::vector<std::vector<Element>> tables;

  // Value of symbol `sym` (index into the signature) at an argument tuple.
  Element apply(int sym, std::span<const Element> args) const {
    return tables[static_cast<std::size_t>(sym)][encode_tuple(args, size)];
  }

  void validate() const {
    if (size < 1) throw Error("algebra " + name + ": size must be >= 1");
    signature.validate();
    if (tables.size() != signature.symbols.size()) {
      throw Error("algebra " + name + ": table count does not match signature");
    }
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const auto& sym = signature.symbols[i];
      std::size_t expect = 1;
      for (int k = 0; k < sym.arity; ++k) expect *= static_cast<std::size_t>(size);
      if (tables[i].size() != expect) {
        throw Error("algebra " + name + ": table for " + sym.name +
                    " has length " + std::to_string(tables[i].size()) +
                    ", expected " + std::to_string(expect));
      }
      for (Element v : tables[i]) {
        if (v < 0 || v >= size) {
          throw Error("algebra " + name + ": table entry out of range for " +
                      sym.name);
        }
      }
    }
  }
};

inline bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return a.name == b.name && a.size == b.size && a.signature == b.signature &&
         a.tables == b.tables;
}

// Direct power A^k: universe of row-major encoded k-tuples, operations
// acting coordinatewise.
inline FiniteAlgebra direct_power(const FiniteAlgebra& A, int k) {
  if (k < 1) throw Error("direct_power: exponent must be >= 1");
  std::size_t n = checked_power(static_cast<std::size_t>(A.size), k,
                                limits().max_universe, "direct_power");
  FiniteAlgebra P;
  P.name = A.name.empty() ? "" : A.name + "^" + std::to_string(k);
  P.size = static_cast<int>(n);
  P.signature = A.signature;
  P.tables.reserve(A.signature.symbols.size());
  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    int r = A.signature.symbols[s].arity;
    std::size_t rows = 1;
    for (int i = 0; i < r; ++i) rows *= n;
    std::vector<Element> table(rows);
    std::vector<std::vector<Element>> args(static_cast<std::size_t>(r));
    std::vector<Element> coord(static_cast<std::size_t>(r));
    std::vector<Element> out(static_cast<std::size_t>(k));
    for (std::size_t row = 0; row < rows; ++row) {
      std::size_t rest = row;
      for (int i = r - 1; i >= 0; --i) {
        args[static_cast<std::size_t>(i)] =
            decode_tuple(rest % n, A.size, k);
        rest /= n;
      }
      for (int c = 0; c < k; ++c) {
        for (int i = 0; i < r; ++i) {
          coord[static_cast<std::size_t>(i)] =
              args[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        }
        out[static_cast<std::size_t>(c)] = A.apply(static_cast<int>(s), coord);
      }
      table[row] = static_cast<Element>(encode_tuple(out, A.size));
    }
    P.tables.push_back(std::move(table));
  }
  return P;
}

// Least subuniverse containing `seeds` (plus all nullary values), the induced
// algebra relabelled to {0..m-1} in increasing element order, and the
// embedding new-index -> original element.
struct Subalgebra {
  std::vector<Element> subuniverse;  // ascending; doubles as the embedding
  FiniteAlgebra algebra;
};

inline Subalgebra generated_subalgebra(const FiniteAlgebra& A,
                                       const std::vector<Element>& seeds) {
  std::vector<bool> in(static_cast<std::size_t>(A.size), false);
  std::vector<Element> members;
  auto add = [&](Element x) {
    if (x < 0 || x >= A.size) throw Error("generated_subalgebra: seed out of range");
    if (!in[static_cast<std::size_t>(x)]) {
      in[static_cast<std::size_t>(x)] = true;
      members.push_back(x);
    }
  };
  for (Element s : seeds) add(s);
  for (std::size_t i = 0; i < A.signature.symbols.size(); ++i) {
    if (A.signature.symbols[i].arity == 0) add(A.tables[i][0]);
  }
  if (members.empty()) {
    throw Error("generated_subalgebra: empty seed set and no nullary operations");
  }
  // Fixpoint: apply every operation to every tuple of current members.
  for (std::size_t next = 0; next < members.size();) {
    std::size_t frozen = members.size();
    for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
      int r = A.signature.symbols[s].arity;
      if (r == 0) continue;
      std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
      std::vector<Element> args(static_cast<std::size_t>(r));
      while (true) {
        for (int i = 0; i < r; ++i) {
          args[static_cast<std::size_t>(i)] = members[idx[static_cast<std::size_t>(i)]];
        }
        add(A.apply(static_cast<int>(s), args));
        int pos = r - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == frozen) {
          idx[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    if (members.size() == frozen) break;  // nothing new: closed
    next = frozen;
  }

  Subalgebra result;
  result.subuniverse = members;
  std::sort(result.subuniverse.begin(), result.subuniverse.end());
  std::vector<int> new_index(static_cast<std::size_t>(A.size), -1);
  for (std::size_t i = 0; i < result.subuniverse.size(); ++i) {
    new_index[static_cast<std::size_t>(result.subuniverse[i])] = static_cast<int>(i);
  }
  FiniteAlgebra& B = result.algebra;
  B.name = A.name.empty() ? "" : A.name + ".sub";
  B.size = static_cast<int>(result.subuniverse.size());
  B.signature = A.signature;
  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    int r = A.signature.symbols[s].arity;
    std::size_t rows = 1;
    for (int i = 0; i < r; ++i) rows *= static_cast<std::size_t>(B.size);
    std::vector<Element> table(rows);
    std::vector<Element> args(static_cast<std::size_t>(r));
    for (std::size_t row = 0; row < rows; ++row) {
      auto local = decode_tuple(row, B.size, r);
      for (int i = 0; i < r; ++i) {
        args[static_cast<std::size_t>(i)] =
            result.subuniverse[static_cast<std::size_t>(local[static_cast<std::size_t>(i)])];
      }
      table[row] = static_cast<Element>(
          new_index[static_cast<std::size_t>(A.apply(static_cast<int>(s), args))]);
    }
    B.tables.push_back(std::move(table));
  }
  return result;
}

// f(x,x,...,x) = x for every basic operation and element.  A nullary symbol
// counts as idempotent only on a one-element universe, where the condition
// is vacuous.
inline bool is_idempotent(const FiniteAlgebra& A) {
  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    int r = A.signature.symbols[s].arity;
    if (r == 0) {
      if (A.size > 1) return false;
      continue;
    }
    for (Element x = 0; x < A.size; ++x) {
      std::vector<Element> args(static_cast<std::size_t>(r), x);
      if (A.apply(static_cast<int>(s), args) != x) return false;
    }
  }
  return true;
}

// h commutes with every basic operation.  Signatures must agree.
inline bool is_homomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                            std::span<const Element> h) {
  if (!(A.signature == B.signature)) {
    throw Error("is_homomorphism: signature mismatch");
  }
  if (h.size() != static_cast<std::size_t>(A.size)) {
    throw Error("is_homomorphism: map does not cover the domain");
  }
  for (Element v : h) {
    if (v < 0 || v >= B.size) throw Error("is_homomorphism: value out of range");
  }
  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    int r = A.signature.symbols[s].arity;
    std::size_t rows = 1;
    for (int i = 0; i < r; ++i) rows *= static_cast<std::size_t>(A.size);
    std::vector<Element> mapped(static_cast<std::size_t>(r));
    for (std::size_t row = 0; row < rows; ++row) {
      auto args = decode_tuple(row, A.size, r);
      for (int i = 0; i < r; ++i) {
        mapped[static_cast<std::size_t>(i)] =
            h[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
      }
      if (h[static_cast<std::size_t>(A.tables[s][row])] !=
          B.apply(static_cast<int>(s), mapped)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace ualg
