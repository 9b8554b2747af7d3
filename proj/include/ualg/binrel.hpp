#pragma once

#include <utility>
#include <vector>

#include "ualg/common.hpp"
#include "ualg/partition.hpp"

namespace ualg {

// A binary relation on {0..n-1}, stored as an n*n bit matrix.
struct BinRel {
  int n = 0;
  std::vector<bool> bits;  // row-major: bits[a*n + b]

  BinRel() = default;
  explicit BinRel(int universe)
      : n(universe),
        bits(static_cast<std::size_t>(universe) * static_cast<std::size_t>(universe),
             false) {}

  static BinRel identity(int universe) {
    BinRel r(universe);
    for (Element x = 0; x < universe; ++x) r.add(x, x);
    return r;
  }

  static BinRel full(int universe) {
    BinRel r(universe);
    r.bits.assign(r.bits.size(), true);
    return r;
  }

  static BinRel from_pairs(int universe,
                           std::span<const std::pair<Element, Element>> pairs) {
    BinRel r(universe);
    for (auto [a, b] : pairs) r.add(a, b);
    return r;
  }

  static BinRel from_partition(const Partition& p) {
    BinRel r(p.n);
    for (Element a = 0; a < p.n; ++a) {
      for (Element b = 0; b < p.n; ++b) {
        if (p.related(a, b)) r.add(a, b);
      }
    }
    return r;
  }

  bool contains(Element a, Element b) const {
    return bits[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(b)];
  }

  void add(Element a, Element b) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw Error("BinRel: pair out of range");
    }
    bits[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
         static_cast<std::size_t>(b)] = true;
  }

  std::vector<std::pair<Element, Element>> pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (contains(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (bool bit : bits) c += bit ? 1 : 0;
    return c;
  }

  // The relation is an equivalence; convert to normalized block form.
  Partition to_partition() const {
    UnionFind uf(n);
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        if (contains(a, b)) uf.unite(a, b);
      }
    }
    return uf.to_partition();
  }

  friend bool operator==(const BinRel&, const BinRel&) = default;
};

inline void require_same_universe(const BinRel& a, const BinRel& b,
                                  const char* what) {
  if (a.n != b.n) throw Error(std::string(what) + ": universe size mismatch");
}

inline BinRel intersect(const BinRel& a, const BinRel& b) {
  require_same_universe(a, b, "intersect");
  BinRel r(a.n);
  for (std::size_t i = 0; i < r.bits.size(); ++i) r.bits[i] = a.bits[i] && b.bits[i];
  return r;
}

inline BinRel unite(const BinRel& a, const BinRel& b) {
  require_same_universe(a, b, "unite");
  BinRel r(a.n);
  for (std::size_t i = 0; i < r.bits.size(); ++i) r.bits[i] = a.bits[i] || b.bits[i];
  return r;
}

// Relational product: (a,c) whenever (a,b) in `a` and (b,c) in `b` for some b.
inline BinRel compose(const BinRel& a, const BinRel& b) {
  require_same_universe(a, b, "compose");
  BinRel r(a.n);
  for (Element x = 0; x < a.n; ++x) {
    for (Element y = 0; y < a.n; ++y) {
      if (!a.contains(x, y)) continue;
      for (Element z = 0; z < a.n; ++z) {
        if (b.contains(y, z)) r.add(x, z);
      }
    }
  }
  return r;
}

// Product relation on pairs: ((a,b),(c,d)) whenever (a,c) in alpha and
// (b,d) in beta.  Pairs are encoded row-major on the squared universe.
inline BinRel tensor(const BinRel& alpha, const BinRel& beta) {
  require_same_universe(alpha, beta, "tensor");
  int n = alpha.n;
  std::size_t sq = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (sq > limits().max_universe) {
    throw BudgetError("tensor: squared universe exceeds configured bound");
  }
  BinRel r(static_cast<int>(sq));
  for (Element a = 0; a < n; ++a) {
    for (Element c = 0; c < n; ++c) {
      if (!alpha.contains(a, c)) continue;
      for (Element b = 0; b < n; ++b) {
        for (Element d = 0; d < n; ++d) {
          if (beta.contains(b, d)) r.add(a * n + b, c * n + d);
        }
      }
    }
  }
  return r;
}

}  // namespace ualg
