#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "splitter/element_set.hpp"
#include "splitter/errors.hpp"

namespace splitter {

/// Undirected multigraph whose edges carry element labels. Loops and parallel
/// edges are allowed; this is what graphic and cographic matroids keep around
/// so that their minors stay graphs.
struct Multigraph {
  struct Ends {
    std::uint8_t u = 0;
    std::uint8_t v = 0;
  };

  int vertexCount = 0;
  ElementSet edges;
  std::array<Ends, kMaxElements> ends{};

  void addEdge(ElementId label, int u, int v) {
    if (label < 0 || label >= kMaxElements) throw DomainError("edge label out of range: " + std::to_string(label));
    if (edges.contains(label)) throw DomainError("duplicate edge label: " + std::to_string(label));
    if (u < 0 || v < 0 || u >= vertexCount || v >= vertexCount) throw DomainError("edge endpoint out of range");
    edges.insert(label);
    ends[label] = {static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v)};
  }

  bool isLoop(ElementId e) const { return ends[e].u == ends[e].v; }

  /// |V(S)| - components(V(S), S), computed with a small union-find.
  int forestRank(ElementSet s) const {
    std::array<std::uint8_t, 256> parent;
    for (int i = 0; i < vertexCount; ++i) parent[i] = static_cast<std::uint8_t>(i);
    auto find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    int r = 0;
    for (ElementId e : s & edges) {
      int a = find(ends[e].u), b = find(ends[e].v);
      if (a != b) {
        parent[a] = static_cast<std::uint8_t>(b);
        ++r;
      }
    }
    return r;
  }

  /// Contract the edges of `c` and delete the edges of `d`. Vertices are
  /// renumbered densely in order of their smallest original member.
  Multigraph minor(ElementSet c, ElementSet d) const {
    std::vector<int> parent(vertexCount);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (ElementId e : c & edges) {
      int a = find(ends[e].u), b = find(ends[e].v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> newId(vertexCount, -1);
    int count = 0;
    for (int v = 0; v < vertexCount; ++v) {
      int r = find(v);
      if (newId[r] < 0) newId[r] = count++;
    }
    Multigraph out;
    out.vertexCount = count;
    for (ElementId e : edges - c - d) {
      out.edges.insert(e);
      out.ends[e] = {static_cast<std::uint8_t>(newId[find(ends[e].u)]),
                     static_cast<std::uint8_t>(newId[find(ends[e].v)])};
    }
    return out;
  }

  /// Drop vertices without incident edges.
  Multigraph withoutIsolatedVertices() const {
    std::vector<int> newId(vertexCount, -1);
    for (ElementId e : edges) newId[ends[e].u] = newId[ends[e].v] = 0;
    int count = 0;
    for (int v = 0; v < vertexCount; ++v)
      if (newId[v] == 0) newId[v] = count++;
    Multigraph out;
    out.vertexCount = count;
    out.edges = edges;
    for (ElementId e : edges)
      out.ends[e] = {static_cast<std::uint8_t>(newId[ends[e].u]), static_cast<std::uint8_t>(newId[ends[e].v])};
    return out;
  }

  bool isSimple() const {
    std::vector<std::uint64_t> seen(vertexCount, 0);
    if (vertexCount > 64) {
      for (ElementId e : edges) {
        if (isLoop(e)) return false;
        for (ElementId f : edges) {
          if (f >= e) break;
          auto [a, b] = std::minmax(ends[e].u, ends[e].v);
          auto [c, d] = std::minmax(ends[f].u, ends[f].v);
          if (a == c && b == d) return false;
        }
      }
      return true;
    }
    for (ElementId e : edges) {
      int u = ends[e].u, v = ends[e].v;
      if (u == v) return false;
      if ((seen[u] >> v) & 1u) return false;
      seen[u] |= std::uint64_t{1} << v;
      seen[v] |= std::uint64_t{1} << u;
    }
    return true;
  }

  /// Adjacency bitmasks (requires at most 64 vertices).
  std::vector<std::uint64_t> adjacency() const {
    if (vertexCount > 64) throw DomainError("adjacency masks need at most 64 vertices");
    std::vector<std::uint64_t> adj(vertexCount, 0);
    for (ElementId e : edges) {
      int u = ends[e].u, v = ends[e].v;
      if (u == v) continue;
      adj[u] |= std::uint64_t{1} << v;
      adj[v] |= std::uint64_t{1} << u;
    }
    return adj;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(vertexCount, 0);
    for (ElementId e : edges) {
      ++deg[ends[e].u];
      ++deg[ends[e].v];
    }
    return deg;
  }
};

namespace detail {

/// Is the subgraph induced on `alive` connected (vacuously true when empty)?
inline bool inducedConnected(const std::vector<std::uint64_t>& adj, std::uint64_t alive) {
  if (alive == 0) return true;
  std::uint64_t seen = alive & (~alive + 1);
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    next &= alive & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == alive;
}

}  // namespace detail

/// Vertex 3-connectivity of the underlying simple graph on `adj`: at least four
/// vertices, connected, and no separating set of one or two vertices.
inline bool isThreeVertexConnected(const std::vector<std::uint64_t>& adj) {
  int n = static_cast<int>(adj.size());
  if (n < 4) return false;
  std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (!detail::inducedConnected(adj, all)) return false;
  for (int a = 0; a < n; ++a) {
    if (std::popcount(adj[a]) < 3) return false;
    for (int b = a + 1; b < n; ++b) {
      Budget::tick();
      std::uint64_t alive = all & ~(std::uint64_t{1} << a) & ~(std::uint64_t{1} << b);
      if (!detail::inducedConnected(adj, alive)) return false;
    }
  }
  return true;
}

}  // namespace splitter
