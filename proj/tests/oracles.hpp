#pragma once
// Brute-force reference implementations. Everything here is written from the
// definitions and touches the library only through Matroid::rank and the
// graph containers, so the unit tests can compare the two independently.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "splitter/splitter.hpp"

namespace oracle {

using splitter::ElementId;
using splitter::ElementSet;
using splitter::Matroid;
using splitter::SimpleGraph;

inline std::vector<ElementSet> subsets(ElementSet ground) {
  std::vector<ElementSet> out;
  std::vector<ElementId> el = ground.toVector();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << el.size()); ++mask) {
    ElementSet s;
    for (std::size_t i = 0; i < el.size(); ++i)
      if ((mask >> i) & 1u) s.insert(el[i]);
    out.push_back(s);
  }
  return out;
}

inline bool dependent(const Matroid& m, ElementSet s) { return m.rank(s) < s.size(); }

inline std::vector<ElementSet> circuits(const Matroid& m) {
  std::vector<ElementSet> out;
  for (ElementSet s : subsets(m.ground())) {
    if (!dependent(m, s)) continue;
    bool minimal = true;
    for (ElementId e : s)
      if (dependent(m, s.without(e))) minimal = false;
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](ElementSet a, ElementSet b) { return lexLess(a, b); });
  return out;
}

/// Complements of hyperplanes.
inline std::vector<ElementSet> cocircuits(const Matroid& m) {
  std::vector<ElementSet> out;
  int r = m.rank();
  for (ElementSet h : subsets(m.ground())) {
    if (m.rank(h) != r - 1) continue;
    bool closed = true;
    for (ElementId e : m.ground() - h)
      if (m.rank(h.with(e)) == r - 1) closed = false;
    if (closed) out.push_back(m.ground() - h);
  }
  std::sort(out.begin(), out.end(), [](ElementSet a, ElementSet b) { return lexLess(a, b); });
  return out;
}

inline ElementSet closure(const Matroid& m, ElementSet s) {
  ElementSet out = s;
  int r = m.rank(s);
  for (ElementId e : m.ground())
    if (m.rank(s.with(e)) == r) out.insert(e);
  return out;
}

inline int lambda(const Matroid& m, ElementSet a) { return m.rank(a) + m.rank(m.ground() - a) - m.rank(); }

/// No partition (A, B) with |A|, |B| >= j and lambda(A) <= j - 1 for j = 1, 2.
inline bool tutte3Connected(const Matroid& m) {
  for (ElementSet a : subsets(m.ground())) {
    ElementSet b = m.ground() - a;
    for (int j = 1; j <= 2; ++j)
      if (a.size() >= j && b.size() >= j && oracle::lambda(m, a) <= j - 1) return false;
  }
  return true;
}

/// No partition with r(A), r(B) >= j and lambda(A) <= j - 1 for j = 1, 2.
inline bool vertically3Connected(const Matroid& m) {
  for (ElementSet a : subsets(m.ground())) {
    ElementSet b = m.ground() - a;
    for (int j = 1; j <= 2; ++j)
      if (m.rank(a) >= j && m.rank(b) >= j && oracle::lambda(m, a) <= j - 1) return false;
  }
  return true;
}

/// Loops dropped, one element (the smallest) kept per parallel class.
inline ElementSet simpleRepresentatives(const Matroid& m) {
  ElementSet keep;
  for (ElementId e : m.ground()) {
    if (m.rank(ElementSet::single(e)) == 0) continue;
    bool parallelToKept = false;
    for (ElementId f : keep)
      if (m.rank(ElementSet{e, f}) == 1) parallelToKept = true;
    if (!parallelToKept) keep.insert(e);
  }
  return keep;
}

inline Matroid simplify(const Matroid& m) { return m.restrict(simpleRepresentatives(m)); }

/// Backtracking bijection search checking every subset rank on the mapped prefix.
inline bool isomorphic(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size() || a.rank() != b.rank()) return false;
  std::vector<ElementId> ea = a.ground().toVector(), eb = b.ground().toVector();
  std::size_t n = ea.size();
  std::vector<ElementId> image(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      image[i] = eb[j];
      bool ok = true;
      for (std::uint64_t mask = 0; ok && mask < (std::uint64_t{1} << i); ++mask) {
        ElementSet sa = ElementSet::single(ea[i]), sb = ElementSet::single(eb[j]);
        for (std::size_t t = 0; t < i; ++t)
          if ((mask >> t) & 1u) sa.insert(ea[t]), sb.insert(image[t]);
        if (a.rank(sa) != b.rank(sb)) ok = false;
      }
      if (!ok) continue;
      used[j] = true;
      if (go(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return go(0);
}

/// N is a minor of M: some independent C of size r(M) - r(N) and some D with
/// M/C\D isomorphic to N.
inline bool hasMinor(const Matroid& m, const Matroid& n) {
  if (n.size() == 0) return true;
  int c = m.rank() - n.rank();
  int d = m.size() - n.size() - c;
  if (c < 0 || d < 0) return false;
  bool found = false;
  forEachSubsetOfSize(m.ground(), c, [&](ElementSet cs) {
    if (m.rank(cs) != c) return true;
    Matroid con = m.contract(cs);
    forEachSubsetOfSize(con.ground(), d, [&](ElementSet ds) {
      Matroid minor = con.deleteSet(ds);
      if (minor.rank() == n.rank() && isomorphic(minor, n)) found = true;
      return !found;
    });
    return !found;
  });
  return found;
}

/// Disjoint, and every circuit of the restriction to the union lies in one member.
inline bool freeFamily(const Matroid& m, const std::vector<ElementSet>& family) {
  ElementSet all;
  for (ElementSet s : family) {
    if (s.intersects(all)) return false;
    all |= s;
  }
  for (ElementSet c : oracle::circuits(m.restrict(all))) {
    bool inside = false;
    for (ElementSet s : family)
      if (s.containsAll(c)) inside = true;
    if (!inside) return false;
  }
  return true;
}

inline bool threeConnectedWithMinor(const Matroid& m, const Matroid& n) {
  return oracle::tutte3Connected(m) && oracle::hasMinor(m, n);
}

inline bool verticallyContractible(const Matroid& m, const Matroid& n, ElementSet s) {
  return oracle::threeConnectedWithMinor(oracle::simplify(m.contract(s)), n);
}

// ---------------------------------------------------------------------------
// Graphs

inline bool graphConnectedWithout(const SimpleGraph& g, std::uint64_t removed) {
  int n = g.vertexCount;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : g.edges) adj[u].push_back(v), adj[v].push_back(u);
  int start = -1, alive = 0;
  for (int v = 0; v < n; ++v)
    if (!((removed >> v) & 1u)) ++alive, start = start < 0 ? v : start;
  if (alive <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{start};
  seen[start] = true;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u])
      if (!seen[w] && !((removed >> w) & 1u)) seen[w] = true, ++count, stack.push_back(w);
  }
  return count == alive;
}

/// At least 4 vertices and no vertex cut of size <= 2.
inline bool graph3Connected(const SimpleGraph& g) {
  int n = g.vertexCount;
  if (n < 4) return false;
  if (!graphConnectedWithout(g, 0)) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (!graphConnectedWithout(g, (std::uint64_t{1} << a) | (std::uint64_t{1} << b))) return false;
  return true;
}

/// Lexicographically least adjacency-bit string over all vertex permutations.
inline std::vector<std::uint8_t> canonical(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> best;
  do {
    std::vector<std::uint8_t> key(n * n, 0);
    for (auto [u, v] : edges) key[perm[u] * n + perm[v]] = key[perm[v] * n + perm[u]] = 1;
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.insert(best.begin(), static_cast<std::uint8_t>(n));
  return best;
}

/// Canonical forms of all simple minors of g with at least minVertices vertices,
/// reached by single-edge deletions and contractions (isolated vertices dropped).
inline std::set<std::vector<std::uint8_t>> minorClosure(const SimpleGraph& g, int minVertices) {
  using Edges = std::vector<std::pair<int, int>>;
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::pair<int, Edges>> work{{g.vertexCount, g.edges}};
  auto normalize = [](int n, Edges edges) {
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) ++deg[u], ++deg[v];
    std::vector<int> relabel(n, -1);
    int k = 0;
    for (int v = 0; v < n; ++v)
      if (deg[v] > 0) relabel[v] = k++;
    for (auto& [u, v] : edges) {
      u = relabel[u], v = relabel[v];
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return std::make_pair(k, edges);
  };
  seen.insert(canonical(g.vertexCount, g.edges));
  while (!work.empty()) {
    auto [n, edges] = work.back();
    work.pop_back();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      Edges del = edges;
      del.erase(del.begin() + static_cast<long>(i));
      auto [a, u] = edges[i];
      Edges con;
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (j == i) continue;
        auto [p, q] = edges[j];
        if (p == u) p = a;
        if (q == u) q = a;
        if (p != q) con.emplace_back(p, q);
      }
      for (auto cand : {normalize(n, del), normalize(n, con)}) {
        if (cand.first < minVertices) continue;
        if (seen.insert(canonical(cand.first, cand.second)).second) work.push_back(cand);
      }
    }
  }
  return seen;
}

}  // namespace oracle
