#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/binrel.hpp"
#include "ualg/common.hpp"
#include "ualg/partition.hpp"
#include "ualg/term.hpp"

namespace ualg {

// ---------------------------------------------------------------------------
// Congruence generation.
//
// Union-find seeded with the generator pairs, plus a work queue of merged
// pairs: merging (a,b) propagates f(..a..) ~ f(..b..) for every basic
// operation, argument position and filler tuple, to a fixpoint.  A proof
// forest records why each merge happened so that derivation chains can be
// reconstructed afterwards.

namespace detail {

struct ProofReason {
  bool is_seed = false;
  int seed_index = -1;
  // Operation propagation: endpoints = (f(..a..), f(..b..)) for the earlier
  // merge parent_pair = (a,b), with `fillers` at the non-hole positions.
  int symbol = -1;
  int position = -1;
  std::vector<Element> fillers;
  std::pair<Element, Element> parent_pair{-1, -1};
  std::pair<Element, Element> endpoints{-1, -1};
};

struct ProofForest {
  std::vector<int> parent;         // -1 at roots
  std::vector<ProofReason> reason; // reason[x] labels the edge x -- parent[x]

  explicit ProofForest(int n)
      : parent(static_cast<std::size_t>(n), -1),
        reason(static_cast<std::size_t>(n)) {}

  // Reverse every edge on the path from x to its root, making x the root.
  void reroot(Element x) {
    int cur = x;
    int new_parent = -1;
    ProofReason new_reason;
    while (cur != -1) {
      int old_parent = parent[static_cast<std::size_t>(cur)];
      ProofReason old_reason = reason[static_cast<std::size_t>(cur)];
      parent[static_cast<std::size_t>(cur)] = new_parent;
      if (new_parent != -1) reason[static_cast<std::size_t>(cur)] = new_reason;
      new_parent = cur;
      new_reason = old_reason;
      cur = old_parent;
    }
  }

  void add_edge(Element x, Element y, ProofReason r) {
    reroot(x);
    parent[static_cast<std::size_t>(x)] = y;
    reason[static_cast<std::size_t>(x)] = std::move(r);
  }

  std::vector<int> ancestors(Element x) const {
    std::vector<int> out;
    for (int cur = x; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) {
      out.push_back(cur);
    }
    return out;
  }
};

}  // namespace detail

struct ThetaTrace {
  detail::ProofForest forest{0};
  std::vector<std::pair<Element, Element>> seeds;
};

inline Partition theta(const FiniteAlgebra& A,
                       std::span<const std::pair<Element, Element>> seed_pairs,
                       ThetaTrace* trace = nullptr) {
  int n = A.size;
  UnionFind uf(n);
  if (trace != nullptr) {
    trace->forest = detail::ProofForest(n);
    trace->seeds.assign(seed_pairs.begin(), seed_pairs.end());
  }
  std::vector<std::pair<Element, Element>> queue;
  auto merge = [&](Element u, Element v, detail::ProofReason r) {
    if (!uf.unite(u, v)) return;
    if (trace != nullptr) {
      r.endpoints = {u, v};
      trace->forest.add_edge(u, v, std::move(r));
    }
    queue.emplace_back(u, v);
  };

  for (std::size_t k = 0; k < seed_pairs.size(); ++k) {
    auto [e, g] = seed_pairs[k];
    if (e < 0 || e >= n || g < 0 || g >= n) {
      throw Error("theta: generator pair out of range");
    }
    detail::ProofReason r;
    r.is_seed = true;
    r.seed_index = static_cast<int>(k);
    merge(e, g, std::move(r));
  }

  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [a, b] = queue[head];
    for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
      int r = A.signature.symbols[s].arity;
      if (r == 0) continue;
      std::size_t filler_rows = 1;
      for (int i = 0; i < r - 1; ++i) filler_rows *= static_cast<std::size_t>(n);
      for (int pos = 0; pos < r; ++pos) {
        for (std::size_t row = 0; row < filler_rows; ++row) {
          auto fillers = decode_tuple(row, n, r - 1);
          std::vector<Element> args(static_cast<std::size_t>(r));
          for (int i = 0, j = 0; i < r; ++i) {
            args[static_cast<std::size_t>(i)] =
                (i == pos) ? a : fillers[static_cast<std::size_t>(j++)];
          }
          Element u = A.apply(static_cast<int>(s), args);
          args[static_cast<std::size_t>(pos)] = b;
          Element v = A.apply(static_cast<int>(s), args);
          if (u == v) continue;
          detail::ProofReason reason;
          reason.symbol = static_cast<int>(s);
          reason.position = pos;
          reason.fillers = fillers;
          reason.parent_pair = {a, b};
          merge(u, v, std::move(reason));
        }
      }
    }
  }
  return uf.to_partition();
}

inline Partition theta(const FiniteAlgebra& A,
                       std::initializer_list<std::pair<Element, Element>> seeds) {
  return theta(A, std::span<const std::pair<Element, Element>>(seeds.begin(),
                                                               seeds.size()));
}

// Congruence generated by a binary relation.
inline Partition theta_rel(const FiniteAlgebra& A, const BinRel& rel) {
  if (rel.n != A.size) throw Error("theta_rel: universe size mismatch");
  auto pairs = rel.pairs();
  return theta(A, pairs);
}

// ---------------------------------------------------------------------------
// Derivation chains (unary-polynomial witnesses for congruence membership).

struct ChainStep {
  Element from = -1;
  Element to = -1;
  int seed_index = -1;
  std::pair<Element, Element> generator{-1, -1};
  bool reverse = false;  // generator used as (g,e) instead of (e,g)
  Polynomial witness;
};

struct DerivationChain {
  Element start = -1;
  Element end = -1;
  std::vector<ChainStep> steps;
};

namespace detail {

// The unary polynomial f(fillers[0..pos-1], x, fillers[pos..]).
inline Polynomial op_polynomial(const FiniteAlgebra& A, int symbol, int position,
                                const std::vector<Element>& fillers) {
  Polynomial p;
  p.constants = fillers;
  std::vector<Term> args;
  int arity = A.signature.symbols[static_cast<std::size_t>(symbol)].arity;
  int next_const = 1;
  for (int i = 0; i < arity; ++i) {
    if (i == position) {
      args.push_back(Term::variable(0));
    } else {
      args.push_back(Term::variable(next_const++));
    }
  }
  p.term = Term::apply(A.signature.symbols[static_cast<std::size_t>(symbol)].name,
                       std::move(args));
  return p;
}

inline void reverse_chain(std::vector<ChainStep>& steps) {
  std::reverse(steps.begin(), steps.end());
  for (ChainStep& s : steps) {
    std::swap(s.from, s.to);
    s.reverse = !s.reverse;
  }
}

struct ChainBuilder {
  const FiniteAlgebra& A;
  const ThetaTrace& trace;

  std::vector<ChainStep> explain(Element a, Element b) const {
    std::vector<ChainStep> steps;
    if (a == b) return steps;
    auto up_a = trace.forest.ancestors(a);
    auto up_b = trace.forest.ancestors(b);
    std::vector<int> mark(trace.forest.parent.size(), -1);
    for (std::size_t i = 0; i < up_a.size(); ++i) {
      mark[static_cast<std::size_t>(up_a[i])] = static_cast<int>(i);
    }
    int lca = -1;
    std::size_t b_len = 0;
    for (std::size_t j = 0; j < up_b.size(); ++j) {
      if (mark[static_cast<std::size_t>(up_b[j])] >= 0) {
        lca = up_b[j];
        b_len = j;
        break;
      }
    }
    if (lca == -1) throw Error("derivation: elements are not related");
    // a -> lca, stored edge orientation (node, parent).
    for (std::size_t i = 0;
         i < static_cast<std::size_t>(mark[static_cast<std::size_t>(lca)]); ++i) {
      Element s = up_a[i];
      Element t = up_a[i + 1];
      append(steps, s, t, trace.forest.reason[static_cast<std::size_t>(s)]);
    }
    // lca -> b, traversed against the stored orientation.
    for (std::size_t j = b_len; j-- > 0;) {
      Element s = up_b[j + 1];
      Element t = up_b[j];
      append(steps, s, t, trace.forest.reason[static_cast<std::size_t>(t)]);
    }
    return steps;
  }

  void append(std::vector<ChainStep>& steps, Element s, Element t,
              const ProofReason& r) const {
    auto expanded = expand(s, t, r);
    steps.insert(steps.end(), expanded.begin(), expanded.end());
  }

  std::vector<ChainStep> expand(Element s, Element t, const ProofReason& r) const {
    bool flipped = r.endpoints != std::make_pair(s, t);
    if (r.is_seed) {
      ChainStep step;
      step.from = s;
      step.to = t;
      step.seed_index = r.seed_index;
      step.generator = trace.seeds[static_cast<std::size_t>(r.seed_index)];
      step.reverse = flipped;
      step.witness = Polynomial::identity();
      return {step};
    }
    auto inner = explain(r.parent_pair.first, r.parent_pair.second);
    Polynomial p = op_polynomial(A, r.symbol, r.position, r.fillers);
    std::vector<ChainStep> wrapped;
    wrapped.reserve(inner.size());
    for (const ChainStep& st : inner) {
      ChainStep w;
      w.from = p.eval(A, st.from);
      w.to = p.eval(A, st.to);
      w.seed_index = st.seed_index;
      w.generator = st.generator;
      w.reverse = st.reverse;
      w.witness = compose(p, st.witness);
      wrapped.push_back(std::move(w));
    }
    // Wrapping can collapse adjacent elements; drop the identity steps.
    std::vector<ChainStep> pruned;
    for (ChainStep& w : wrapped) {
      if (w.from != w.to) pruned.push_back(std::move(w));
    }
    if (flipped) reverse_chain(pruned);
    return pruned;
  }
};

}  // namespace detail

// Chain witnessing (a,c) in theta(A, seeds); throws if it is not a member.
inline DerivationChain extract_chain(
    const FiniteAlgebra& A,
    std::span<const std::pair<Element, Element>> seed_pairs, Element a,
    Element c) {
  if (a < 0 || a >= A.size || c < 0 || c >= A.size) {
    throw Error("extract_chain: query out of range");
  }
  ThetaTrace trace;
  Partition closure = theta(A, seed_pairs, &trace);
  DerivationChain chain;
  chain.start = a;
  chain.end = c;
  if (a == c) return chain;
  if (!closure.related(a, c)) {
    throw Error("extract_chain: pair (" + std::to_string(a) + "," +
                std::to_string(c) + ") is not derivable from the given pairs");
  }
  detail::ChainBuilder builder{A, trace};
  chain.steps = builder.explain(a, c);
  return chain;
}

// Replay a chain: endpoints, step composition, and witness evaluation at the
// generator pair must all line up.
inline bool validate_chain(const FiniteAlgebra& A,
                           std::span<const std::pair<Element, Element>> seeds,
                           const DerivationChain& chain) {
  Element cur = chain.start;
  for (const ChainStep& s : chain.steps) {
    if (s.from != cur) return false;
    if (s.seed_index < 0 || static_cast<std::size_t>(s.seed_index) >= seeds.size()) {
      return false;
    }
    if (seeds[static_cast<std::size_t>(s.seed_index)] != s.generator) return false;
    Element e = s.generator.first;
    Element g = s.generator.second;
    if (s.reverse) std::swap(e, g);
    if (s.witness.eval(A, e) != s.from) return false;
    if (s.witness.eval(A, g) != s.to) return false;
    cur = s.to;
  }
  return cur == chain.end;
}

// ---------------------------------------------------------------------------
// Compatibility and the full congruence lattice.

inline bool is_congruence(const FiniteAlgebra& A, const Partition& p) {
  if (p.n != A.size) return false;
  for (std::size_t s = 0; s < A.signature.symbols.size(); ++s) {
    int r = A.signature.symbols[s].arity;
    if (r == 0) continue;
    std::size_t filler_rows = 1;
    for (int i = 0; i < r - 1; ++i) filler_rows *= static_cast<std::size_t>(A.size);
    for (Element a = 0; a < A.size; ++a) {
      for (Element b = a + 1; b < A.size; ++b) {
        if (!p.related(a, b)) continue;
        for (int pos = 0; pos < r; ++pos) {
          for (std::size_t row = 0; row < filler_rows; ++row) {
            auto fillers = decode_tuple(row, A.size, r - 1);
            std::vector<Element> args(static_cast<std::size_t>(r));
            for (int i = 0, j = 0; i < r; ++i) {
              args[static_cast<std::size_t>(i)] =
                  (i == pos) ? a : fillers[static_cast<std::size_t>(j++)];
            }
            Element u = A.apply(static_cast<int>(s), args);
            args[static_cast<std::size_t>(pos)] = b;
            Element v = A.apply(static_cast<int>(s), args);
            if (!p.related(u, v)) return false;
          }
        }
      }
    }
  }
  return true;
}

// Join of two congruences, computed as congruence generation from linear
// seed sets (x ~ rep(x) in either argument).
inline Partition join_congruences(const FiniteAlgebra& A, const Partition& a,
                                  const Partition& b) {
  std::vector<std::pair<Element, Element>> seeds;
  for (Element x = 0; x < A.size; ++x) {
    if (a.rep(x) != x) seeds.emplace_back(x, a.rep(x));
    if (b.rep(x) != x) seeds.emplace_back(x, b.rep(x));
  }
  return theta(A, seeds);
}

struct ConLattice {
  std::vector<Partition> congruences;  // sorted lexicographically by block_of
  std::vector<std::vector<bool>> leq;  // leq[i][j]: i refines j

  int index_of(const Partition& p) const {
    auto it = std::lower_bound(congruences.begin(), congruences.end(), p);
    if (it != congruences.end() && *it == p) {
      return static_cast<int>(it - congruences.begin());
    }
    return -1;
  }
  std::size_t size() const { return congruences.size(); }
};

inline ConLattice con(const FiniteAlgebra& A) {
  if (static_cast<std::size_t>(A.size) > limits().con_max_universe) {
    throw BudgetError("con: universe exceeds configured lattice bound (" +
                      std::to_string(limits().con_max_universe) + ")");
  }
  std::set<Partition> found;
  found.insert(Partition::identity(A.size));
  for (Element a = 0; a < A.size; ++a) {
    for (Element b = a + 1; b < A.size; ++b) {
      std::pair<Element, Element> seed{a, b};
      found.insert(theta(A, std::span<const std::pair<Element, Element>>(&seed, 1)));
    }
  }
  // Close under pairwise join.
  std::vector<Partition> work(found.begin(), found.end());
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Partition joined = join_congruences(A, work[i], work[j]);
      if (found.insert(joined).second) work.push_back(joined);
    }
  }
  ConLattice lattice;
  lattice.congruences.assign(found.begin(), found.end());
  std::size_t m = lattice.congruences.size();
  lattice.leq.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      lattice.leq[i][j] = lattice.congruences[i].refines(lattice.congruences[j]);
    }
  }
  return lattice;
}

// ---------------------------------------------------------------------------
// Rel(A) operations: meet and compose are plain relation algebra; join is
// congruence generation of the union, defined for arbitrary relations.

enum class RelOp { meet, join, compose };

inline BinRel rel_combine(RelOp op, const FiniteAlgebra& A, const BinRel& a,
                          const BinRel& b) {
  require_same_universe(a, b, "rel_combine");
  if (a.n != A.size) throw Error("rel_combine: relations do not match the algebra");
  switch (op) {
    case RelOp::meet:
      return intersect(a, b);
    case RelOp::compose:
      return compose(a, b);
    case RelOp::join:
      return BinRel::from_partition(theta_rel(A, unite(a, b)));
  }
  throw Error("rel_combine: unknown operation");
}

}  // namespace ualg
