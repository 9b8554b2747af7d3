#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <vector>

#include "ualg/common.hpp"

namespace ualg {

// An equivalence relation on {0..n-1} in normalized block form:
// block_of[x] is the least element of x's block.
struct Partition {
  int n = 0;
  std::vector<Element> block_of;

  Partition() = default;
  explicit Partition(int universe)
      : n(universe), block_of(static_cast<std::size_t>(universe)) {
    std::iota(block_of.begin(), block_of.end(), 0);
  }

  static Partition identity(int universe) { return Partition(universe); }

  static Partition full(int universe) {
    Partition p(universe);
    std::fill(p.block_of.begin(), p.block_of.end(), 0);
    return p;
  }

  bool related(Element a, Element b) const {
    return block_of[static_cast<std::size_t>(a)] ==
           block_of[static_cast<std::size_t>(b)];
  }

  Element rep(Element a) const { return block_of[static_cast<std::size_t>(a)]; }

  int block_count() const {
    int count = 0;
    for (Element x = 0; x < n; ++x) {
      if (block_of[static_cast<std::size_t>(x)] == x) ++count;
    }
    return count;
  }

  std::vector<std::vector<Element>> blocks() const {
    std::vector<std::vector<Element>> out;
    std::vector<int> which(static_cast<std::size_t>(n), -1);
    for (Element x = 0; x < n; ++x) {
      Element r = rep(x);
      if (which[static_cast<std::size_t>(r)] < 0) {
        which[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[static_cast<std::size_t>(which[static_cast<std::size_t>(r)])].push_back(x);
    }
    return out;
  }

  // Every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const {
    for (Element x = 0; x < n; ++x) {
      if (!coarser.related(x, rep(x))) return false;
    }
    return true;
  }

  // All related pairs, row-major.
  std::vector<std::pair<Element, Element>> pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (related(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }

  // Canonical order: lexicographic on block_of.
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

// Blockwise intersection; always a partition.
inline Partition meet(const Partition& a, const Partition& b) {
  Partition out(a.n);
  // Pair (rep_a, rep_b) determines the block; least element first seen wins.
  std::vector<std::vector<Element>> first(
      static_cast<std::size_t>(a.n),
      std::vector<Element>(static_cast<std::size_t>(a.n), -1));
  for (Element x = 0; x < a.n; ++x) {
    Element& slot = first[static_cast<std::size_t>(a.rep(x))]
                         [static_cast<std::size_t>(b.rep(x))];
    if (slot < 0) slot = x;
    out.block_of[static_cast<std::size_t>(x)] = slot;
  }
  return out;
}

// Union-find over {0..n-1} with path halving; normalizes to least-element
// representatives on demand.
struct UnionFind {
  std::vector<Element> parent;

  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  Element find(Element x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  // Returns true if the classes were distinct (a merge happened).
  bool unite(Element a, Element b) {
    Element ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (ra < rb) std::swap(ra, rb);  // keep the least element as root
    parent[static_cast<std::size_t>(ra)] = rb;
    return true;
  }

  bool same(Element a, Element b) { return find(a) == find(b); }

  Partition to_partition() {
    Partition p(static_cast<int>(parent.size()));
    for (Element x = 0; x < p.n; ++x) {
      p.block_of[static_cast<std::size_t>(x)] = find(x);
    }
    return p;
  }
};

}  // namespace ualg
