#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "splitter/element_set.hpp"
#include "splitter/errors.hpp"
#include "splitter/matroid.hpp"
#include "splitter/multigraph.hpp"

namespace splitter {

/// Simple undirected graph; edge ids are the dense positions in `edges`.
struct SimpleGraph {
  int vertexCount = 0;
  std::vector<std::pair<int, int>> edges;

  SimpleGraph() = default;
  explicit SimpleGraph(int n) : vertexCount(n) {}

  int addEdge(int u, int v) {
    if (u == v) throw DomainError("simple graphs have no loops");
    if (u < 0 || v < 0 || u >= vertexCount || v >= vertexCount) throw DomainError("edge endpoint out of range");
    if (u > v) std::swap(u, v);
    for (auto& e : edges)
      if (e == std::make_pair(u, v)) throw DomainError("simple graphs have no parallel edges");
    edges.emplace_back(u, v);
    return static_cast<int>(edges.size()) - 1;
  }

  int edgeCount() const { return static_cast<int>(edges.size()); }

  std::vector<std::uint64_t> adjacency() const {
    if (vertexCount > 64) throw DomainError("adjacency masks need at most 64 vertices");
    std::vector<std::uint64_t> adj(vertexCount, 0);
    for (auto [u, v] : edges) {
      adj[u] |= std::uint64_t{1} << v;
      adj[v] |= std::uint64_t{1} << u;
    }
    return adj;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(vertexCount, 0);
    for (auto [u, v] : edges) ++d[u], ++d[v];
    return d;
  }

  /// Edge id joining u and v, or -1.
  int edgeId(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (int i = 0; i < edgeCount(); ++i)
      if (edges[i] == std::make_pair(u, v)) return i;
    return -1;
  }

  /// Labeled multigraph with edge i carrying label i.
  Multigraph toMultigraph() const {
    if (edgeCount() > kMaxElements) throw DomainError("at most 64 edges supported");
    if (vertexCount > 255) throw DomainError("at most 255 vertices supported");
    Multigraph g;
    g.vertexCount = vertexCount;
    for (int i = 0; i < edgeCount(); ++i) g.addEdge(i, edges[i].first, edges[i].second);
    return g;
  }

  static SimpleGraph fromAdjacency(const std::vector<std::uint64_t>& adj) {
    SimpleGraph g(static_cast<int>(adj.size()));
    for (int v = 1; v < g.vertexCount; ++v)
      for (int u = 0; u < v; ++u)
        if ((adj[u] >> v) & 1u) g.edges.emplace_back(u, v);
    return g;
  }

  /// G minus one edge; remaining edges keep their relative order.
  SimpleGraph withoutEdge(int id) const {
    SimpleGraph g = *this;
    g.edges.erase(g.edges.begin() + id);
    return g;
  }
};

// ---------------------------------------------------------------------------
// graph6

/// Parses one graph6 line (at most 62 vertices). Bit (i, j), i < j, is read in
/// column order j = 1..n-1, i = 0..j-1, six bits per byte offset by 63.
inline SimpleGraph parseGraph6(const std::string& text) {
  std::string s = text;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  std::size_t pos = 0;
  if (s.rfind(">>graph6<<", 0) == 0) pos = 10;
  if (pos >= s.size()) throw ParseError("empty graph6 string", pos);
  int c = static_cast<unsigned char>(s[pos]);
  if (c < 63 || c > 126) throw ParseError("bad graph6 header byte", pos);
  if (c == 126) throw ParseError("graph6 inputs above 62 vertices are not supported", pos);
  int n = c - 63;
  ++pos;
  std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::size_t bytes = (bits + 5) / 6;
  if (s.size() - pos < bytes) throw ParseError("truncated graph6 bit string", s.size());
  if (s.size() - pos > bytes) throw ParseError("trailing bytes after graph6 bit string", pos + bytes);
  SimpleGraph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      std::size_t at = pos + k / 6;
      int byte = static_cast<unsigned char>(s[at]);
      if (byte < 63 || byte > 126) throw ParseError("bad graph6 data byte", at);
      if (((byte - 63) >> (5 - k % 6)) & 1) g.edges.emplace_back(i, j);
    }
  }
  for (std::size_t at = pos; at < s.size(); ++at) {
    int byte = static_cast<unsigned char>(s[at]);
    if (byte < 63 || byte > 126) throw ParseError("bad graph6 data byte", at);
  }
  return g;
}

inline std::string emitGraph6(const SimpleGraph& g) {
  if (g.vertexCount > 62) throw DomainError("graph6 emission supports at most 62 vertices");
  int n = g.vertexCount;
  std::vector<std::uint64_t> adj = g.adjacency();
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0, filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | static_cast<int>((adj[i] >> j) & 1u);
      if (++filled == 6) {
        out += static_cast<char>(63 + acc);
        acc = filled = 0;
      }
    }
  }
  if (filled) out += static_cast<char>(63 + (acc << (6 - filled)));
  return out;
}

// ---------------------------------------------------------------------------
// Connectivity

inline bool isThreeConnectedGraph(const SimpleGraph& g) {
  if (g.vertexCount < 4) return false;
  return isThreeVertexConnected(g.adjacency());
}

inline bool isConnectedGraph(const SimpleGraph& g) {
  if (g.vertexCount == 0) return true;
  std::vector<std::uint64_t> adj = g.adjacency();
  std::uint64_t all = g.vertexCount == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.vertexCount) - 1;
  return detail::inducedConnected(adj, all);
}

// ---------------------------------------------------------------------------
// Named families

enum class GraphFamily { Complete, CompleteBipartite, Wheel, Prism, K3nTriplePrime, Octahedron, Path, Cycle };

inline SimpleGraph completeGraph(int n) {
  if (n < 1) throw DomainError("K_n needs n >= 1");
  SimpleGraph g(n);
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) g.edges.emplace_back(u, v);
  return g;
}

/// Vertices 0..a-1 on one side, a..a+b-1 on the other.
inline SimpleGraph completeBipartite(int a, int b) {
  if (a < 1 || b < 1) throw DomainError("K_{a,b} needs a, b >= 1");
  SimpleGraph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) g.edges.emplace_back(u, v);
  return g;
}

/// Hub 0 joined to a rim cycle 1..n.
inline SimpleGraph wheelGraph(int n) {
  if (n < 3) throw DomainError("wheel needs n >= 3");
  SimpleGraph g(n + 1);
  for (int i = 1; i <= n; ++i) g.addEdge(0, i);
  for (int i = 1; i <= n; ++i) g.addEdge(i, i % n + 1);
  return g;
}

/// Triangles {0,1,2} and {3,4,5} joined by the matching i -- i+3.
/// Edge ids: 0:01 1:12 2:02 3:34 4:45 5:35 6:03 7:14 8:25.
inline SimpleGraph prismGraph() {
  SimpleGraph g(6);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(0, 2);
  g.addEdge(3, 4);
  g.addEdge(4, 5);
  g.addEdge(3, 5);
  g.addEdge(0, 3);
  g.addEdge(1, 4);
  g.addEdge(2, 5);
  return g;
}

inline SimpleGraph octahedronGraph() {
  SimpleGraph g(6);
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v)
      if (v != u + 3) g.addEdge(u, v);
  return g;
}

inline SimpleGraph pathGraph(int n) {
  SimpleGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.addEdge(i, i + 1);
  return g;
}

inline SimpleGraph cycleGraph(int n) {
  if (n < 3) throw DomainError("cycle needs n >= 3");
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  return g;
}

/// K_{3,n} plus the triangle on the 3-side. The 3-side is 0,1,2; edges are the
/// triangle 01,12,02 first, then the stars of vertices 3..n+2 in order.
inline SimpleGraph k3nTriplePrime(int n) {
  if (n < 1) throw DomainError("K_{3,n}''' needs n >= 1");
  SimpleGraph g(n + 3);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(0, 2);
  for (int v = 3; v < n + 3; ++v)
    for (int u = 0; u < 3; ++u) g.addEdge(u, v);
  return g;
}

inline SimpleGraph namedGraph(GraphFamily family, int p = 0, int q = 0) {
  switch (family) {
    case GraphFamily::Complete: return completeGraph(p);
    case GraphFamily::CompleteBipartite: return completeBipartite(p, q);
    case GraphFamily::Wheel: return wheelGraph(p);
    case GraphFamily::Prism: return prismGraph();
    case GraphFamily::K3nTriplePrime: return k3nTriplePrime(p);
    case GraphFamily::Octahedron: return octahedronGraph();
    case GraphFamily::Path: return pathGraph(p);
    case GraphFamily::Cycle: return cycleGraph(p);
  }
  throw DomainError("unknown graph family");
}

/// Parses names like K4, K3,3, W5, prism, octahedron, K3,4''' (also K3n4).
inline std::optional<SimpleGraph> graphByName(const std::string& name) {
  auto num = [](const std::string& s) -> std::optional<int> {
    if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
    return std::stoi(s);
  };
  if (name == "prism") return prismGraph();
  if (name == "octahedron") return octahedronGraph();
  if (name.size() > 1 && name[0] == 'W') {
    if (auto n = num(name.substr(1))) return wheelGraph(*n);
  }
  if (name.size() > 1 && name[0] == 'K') {
    std::string rest = name.substr(1);
    if (rest.size() > 3 && rest.substr(rest.size() - 3) == "'''" && rest.rfind("3,", 0) == 0) {
      if (auto n = num(rest.substr(2, rest.size() - 5))) return k3nTriplePrime(*n);
    }
    if (auto comma = rest.find(','); comma != std::string::npos) {
      auto a = num(rest.substr(0, comma)), b = num(rest.substr(comma + 1));
      if (a && b) return completeBipartite(*a, *b);
      return std::nullopt;
    }
    if (auto n = num(rest)) return completeGraph(*n);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sharpness instance

/// K_{3,n}''' glued to K_{m,m} along the three high-degree vertices.
struct SharpInstance {
  SimpleGraph G;
  SimpleGraph H;          ///< the K_{m,m} part as a standalone graph
  ElementSet K;           ///< edges of the K_{3,n}''' part
  ElementSet Hpart;       ///< edges of the K_{m,m} part
  std::array<int, 3> U{};  ///< shared vertices
  std::vector<ElementSet> Xi;  ///< stars of the degree-3 vertices
  ElementSet triangleU;   ///< edges of G[U]
  int n = 0, m = 0;
  int k = 0;              ///< r(M*(G)) - r(M*(H))
};

/// Vertices: U = {0,1,2}; the degree-3 vertices 3..n+2; the rest of class B
/// n+3..n+m-1+... ; class A last. Edge ids: G[U] triangle 0..2, stars of the
/// degree-3 vertices next (three per vertex), then the K_{m,m} edges.
inline SharpInstance sharpnessInstance(int n, int m) {
  if (n < 4 || m < 4) throw DomainError("sharpness instance needs n >= 4 and m >= 4");
  SharpInstance s;
  s.n = n;
  s.m = m;
  int vertices = 3 + n + (m - 3) + m;
  if (3 * n + 3 + m * m > kMaxElements) throw DomainError("sharpness instance exceeds 64 edges");
  s.G = SimpleGraph(vertices);
  s.U = {0, 1, 2};
  for (int e : {s.G.addEdge(0, 1), s.G.addEdge(1, 2), s.G.addEdge(0, 2)}) {
    s.K.insert(e);
    s.triangleU.insert(e);
  }
  for (int i = 0; i < n; ++i) {
    int v = 3 + i;
    ElementSet star;
    for (int u = 0; u < 3; ++u) star.insert(s.G.addEdge(u, v));
    s.K |= star;
    s.Xi.push_back(star);
  }
  // Class B = U plus m-3 fresh vertices; class A = m fresh vertices.
  std::vector<int> B{0, 1, 2};
  for (int i = 0; i < m - 3; ++i) B.push_back(3 + n + i);
  std::vector<int> A;
  for (int i = 0; i < m; ++i) A.push_back(3 + n + (m - 3) + i);
  for (int b : B)
    for (int a : A) s.Hpart.insert(s.G.addEdge(b, a));
  s.H = completeBipartite(m, m);
  // r(M*(G)) - r(M*(H)) = (|E(G)| - |V(G)| + 1) - (|E(H)| - |V(H)| + 1)
  int rG = s.G.edgeCount() - s.G.vertexCount + 1;
  int rH = s.H.edgeCount() - s.H.vertexCount + 1;
  s.k = rG - rH;
  if (s.k != 2 * n + 3) throw DomainError("sharpness instance invariant k = 2n+3 violated");
  return s;
}

// ---------------------------------------------------------------------------
// Graphic and bond matroids

inline Matroid graphicMatroid(const SimpleGraph& g) { return graphicMatroid(g.toMultigraph()); }
inline Matroid bondMatroid(const SimpleGraph& g) { return cographicMatroid(g.toMultigraph()); }

// ---------------------------------------------------------------------------
// Graph minors

/// H ≅ G / contracted \ deleted. branchSets[h] is the set of G vertices
/// (bitmask) merged into H-vertex h; edgeMap[label of H edge] = label of G edge.
struct MinorWitnessGraph {
  ElementSet contractedEdges;
  ElementSet deletedEdges;
  std::vector<std::uint64_t> branchSets;
  std::array<ElementId, kMaxElements> edgeMap{};
};

namespace detail {

/// Injective (or bijective) map of H into Q preserving adjacency. Returns the
/// vertex map or an empty vector.
inline std::vector<int> findMonomorphism(const std::vector<std::uint64_t>& h, const std::vector<std::uint64_t>& q,
                                         bool bijective) {
  int hn = static_cast<int>(h.size()), qn = static_cast<int>(q.size());
  if (hn > qn || (bijective && hn != qn)) return {};
  std::vector<int> hdeg(hn), qdeg(qn);
  for (int i = 0; i < hn; ++i) hdeg[i] = std::popcount(h[i]);
  for (int i = 0; i < qn; ++i) qdeg[i] = std::popcount(q[i]);
  // Highest degree first, then prefer vertices adjacent to those already ordered.
  std::vector<int> order;
  std::uint64_t placed = 0;
  for (int step = 0; step < hn; ++step) {
    int best = -1, bestKey = -1;
    for (int v = 0; v < hn; ++v) {
      if ((placed >> v) & 1u) continue;
      int key = std::popcount(h[v] & placed) * 128 + hdeg[v];
      if (key > bestKey) {
        bestKey = key;
        best = v;
      }
    }
    order.push_back(best);
    placed |= std::uint64_t{1} << best;
  }
  std::vector<int> map(hn, -1);
  std::uint64_t used = 0;
  std::function<bool(int)> go = [&](int depth) -> bool {
    if (depth == hn) return true;
    Budget::tick();
    int v = order[depth];
    std::uint64_t need = 0;  // Q vertices that must be adjacent to the image
    std::uint64_t candidates = (qn == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << qn) - 1) & ~used;
    for (int d = 0; d < depth; ++d) {
      int u = order[d];
      if ((h[v] >> u) & 1u) candidates &= q[map[u]];
    }
    (void)need;
    for (std::uint64_t c = candidates; c; c &= c - 1) {
      int w = std::countr_zero(c);
      if (qdeg[w] < hdeg[v]) continue;
      map[v] = w;
      used |= std::uint64_t{1} << w;
      if (go(depth + 1)) return true;
      used &= ~(std::uint64_t{1} << w);
      map[v] = -1;
    }
    return false;
  };
  if (!go(0)) return {};
  return map;
}

struct PartitionHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace detail

/// Does the multigraph G have a minor isomorphic to the simple graph H (given
/// as a multigraph whose edge labels name H's edges)? Branch sets come from
/// spanning forests: when G is connected every vertex can be absorbed into a
/// branch set, so only forests with |V(G)| - |V(H)| edges are needed.
inline std::optional<MinorWitnessGraph> graphHasMinor(const Multigraph& gIn, const Multigraph& hIn) {
  if (!hIn.isSimple()) throw DomainError("minor target must be a simple graph");
  Multigraph g = gIn.withoutIsolatedVertices();
  if (g.vertexCount > 64 || hIn.vertexCount > 64) throw DomainError("graph minor search supports at most 64 vertices");
  int gn = g.vertexCount, hn = hIn.vertexCount;
  // Underlying simple graph of G: skip loops, keep the smallest parallel label.
  std::vector<std::uint64_t> gadj(gn, 0);
  ElementSet simpleEdges;
  {
    std::vector<std::uint64_t> seen(gn, 0);
    for (ElementId e : g.edges) {
      int u = g.ends[e].u, v = g.ends[e].v;
      if (u == v || ((seen[u] >> v) & 1u)) continue;
      seen[u] |= std::uint64_t{1} << v;
      seen[v] |= std::uint64_t{1} << u;
      simpleEdges.insert(e);
    }
    gadj = seen;
  }
  std::vector<std::uint64_t> hadj = hIn.adjacency();
  int hEdges = hIn.edges.size();
  MinorWitnessGraph witness;
  if (hn == 0) {
    witness.deletedEdges = gIn.edges;
    witness.edgeMap.fill(-1);
    return witness;
  }
  if (hn > gn || hEdges > simpleEdges.size()) return std::nullopt;
  std::uint64_t all = gn == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << gn) - 1;
  bool connected = detail::inducedConnected(gadj, all);
  std::vector<ElementId> edgeList = simpleEdges.toVector();
  int hMaxDeg = 0;
  for (auto a : hadj) hMaxDeg = std::max(hMaxDeg, std::popcount(a));

  std::optional<MinorWitnessGraph> found;
  std::unordered_set<std::vector<std::uint8_t>, detail::PartitionHash> seenPartitions;

  auto tryForest = [&](ElementSet forest, const std::vector<int>& comp, int q, bool bijective) {
    std::vector<std::uint8_t> key(comp.begin(), comp.end());
    if (!seenPartitions.insert(key).second) return false;
    std::vector<std::uint64_t> qadj(q, 0);
    std::vector<std::vector<ElementId>> rep(q * q, std::vector<ElementId>{});
    std::vector<ElementId> repEdge(q * q, -1);
    for (ElementId e : simpleEdges) {
      int a = comp[g.ends[e].u], b = comp[g.ends[e].v];
      if (a == b) continue;
      qadj[a] |= std::uint64_t{1} << b;
      qadj[b] |= std::uint64_t{1} << a;
      if (repEdge[a * q + b] < 0) repEdge[a * q + b] = repEdge[b * q + a] = e;
    }
    int qEdges = 0, qMaxDeg = 0;
    for (auto a : qadj) qEdges += std::popcount(a), qMaxDeg = std::max(qMaxDeg, std::popcount(a));
    if (qEdges / 2 < hEdges || qMaxDeg < hMaxDeg) return false;
    std::vector<int> map = detail::findMonomorphism(hadj, qadj, bijective);
    if (map.empty()) return false;
    MinorWitnessGraph w;
    w.edgeMap.fill(-1);
    w.contractedEdges = forest;
    w.branchSets.assign(hn, 0);
    std::vector<std::uint64_t> compVerts(q, 0);
    // Map back to the original vertex numbering of gIn.
    std::vector<int> original;
    {
      std::vector<int> keep(gIn.vertexCount, 0);
      for (ElementId e : gIn.edges) keep[gIn.ends[e].u] = keep[gIn.ends[e].v] = 1;
      for (int v = 0; v < gIn.vertexCount; ++v)
        if (keep[v]) original.push_back(v);
    }
    for (int v = 0; v < gn; ++v) compVerts[comp[v]] |= std::uint64_t{1} << original[v];
    for (int x = 0; x < hn; ++x) w.branchSets[x] = compVerts[map[x]];
    ElementSet used = forest;
    for (ElementId he : hIn.edges) {
      int a = map[hIn.ends[he].u], b = map[hIn.ends[he].v];
      ElementId ge = repEdge[a * q + b];
      w.edgeMap[he] = ge;
      used.insert(ge);
    }
    w.deletedEdges = gIn.edges - used;
    found = w;
    return true;
  };

  // Enumerate forests of exactly `size` edges in label order with a copied union-find.
  auto forests = [&](int size, bool bijective) -> bool {
    std::vector<int> parent(gn);
    std::function<bool(int, int, ElementSet)> rec = [&](int start, int remaining, ElementSet forest) -> bool {
      if (remaining == 0) {
        Budget::tick();
        std::vector<int> comp(gn, -1);
        int q = 0;
        std::vector<int> rootId(gn, -1);
        auto find = [&](int x) {
          while (parent[x] != x) x = parent[x];
          return x;
        };
        for (int v = 0; v < gn; ++v) {
          int r = find(v);
          if (rootId[r] < 0) rootId[r] = q++;
          comp[v] = rootId[r];
        }
        return tryForest(forest, comp, q, bijective);
      }
      for (int i = start; i + remaining <= static_cast<int>(edgeList.size()); ++i) {
        ElementId e = edgeList[i];
        int a = g.ends[e].u, b = g.ends[e].v;
        auto find = [&](int x) {
          while (parent[x] != x) x = parent[x];
          return x;
        };
        int ra = find(a), rb = find(b);
        if (ra == rb) continue;
        parent[ra] = rb;
        bool ok = rec(i + 1, remaining - 1, forest.with(e));
        parent[ra] = ra;
        if (ok) return true;
      }
      return false;
    };
    for (int v = 0; v < gn; ++v) parent[v] = v;
    seenPartitions.clear();
    return rec(0, size, ElementSet{});
  };

  if (connected) {
    forests(gn - hn, true);
  } else {
    for (int f = gn - hn; f >= 0 && !found; --f) forests(f, false);
  }
  return found;
}

inline std::optional<MinorWitnessGraph> graphHasMinor(const SimpleGraph& g, const SimpleGraph& h) {
  if (h.vertexCount > g.vertexCount || h.edgeCount() > g.edgeCount()) return std::nullopt;
  return graphHasMinor(g.toMultigraph(), h.toMultigraph());
}

// ---------------------------------------------------------------------------
// Canonical form and corpus generation

namespace detail {

/// Refines an ordered partition (cells as vertex masks) to an equitable one.
inline void refine(const std::vector<std::uint64_t>& adj, std::vector<std::uint64_t>& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      for (std::size_t si = 0; si < cells.size(); ++si) {
        std::uint64_t cell = cells[ci];
        if (std::popcount(cell) == 1) break;
        std::uint64_t splitter = cells[si];
        // Split `cell` by number of neighbours in `splitter`.
        std::array<std::uint64_t, 65> byCount{};
        int distinct = 0;
        for (std::uint64_t c = cell; c; c &= c - 1) {
          int v = std::countr_zero(c);
          int k = std::popcount(adj[v] & splitter);
          if (!byCount[k]) ++distinct;
          byCount[k] |= std::uint64_t{1} << v;
        }
        if (distinct == 1) continue;
        std::vector<std::uint64_t> parts;
        for (auto p : byCount)
          if (p) parts.push_back(p);
        cells.erase(cells.begin() + static_cast<long>(ci));
        cells.insert(cells.begin() + static_cast<long>(ci), parts.begin(), parts.end());
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
}

/// Upper triangle of the relabeled graph, packed as bits.
inline std::vector<std::uint64_t> relabeledKey(const std::vector<std::uint64_t>& adj, const std::vector<int>& perm) {
  int n = static_cast<int>(adj.size());
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[perm[i]] = i;  // perm[old] = new
  std::vector<std::uint64_t> rows(n, 0);
  for (int v = 0; v < n; ++v)
    for (std::uint64_t a = adj[v]; a; a &= a - 1) rows[perm[v]] |= std::uint64_t{1} << perm[std::countr_zero(a)];
  (void)inv;
  return rows;
}

}  // namespace detail

/// Canonical relabeling by individualization-refinement. Within a cell only one
/// representative per twin class is branched on (swapping twins is an automorphism).
inline std::vector<std::uint64_t> canonicalAdjacency(const std::vector<std::uint64_t>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 0) return {};
  std::vector<std::uint64_t> best;
  bool have = false;
  std::vector<std::uint64_t> start{n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  std::function<void(std::vector<std::uint64_t>)> search = [&](std::vector<std::uint64_t> cells) {
    detail::refine(adj, cells);
    auto target = std::find_if(cells.begin(), cells.end(), [](std::uint64_t c) { return std::popcount(c) > 1; });
    if (target == cells.end()) {
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[std::countr_zero(cells[i])] = i;
      auto key = detail::relabeledKey(adj, perm);
      if (!have || key < best) {
        best = std::move(key);
        have = true;
      }
      return;
    }
    std::uint64_t cell = *target;
    std::size_t idx = static_cast<std::size_t>(target - cells.begin());
    std::uint64_t covered = 0;
    for (std::uint64_t c = cell; c; c &= c - 1) {
      int v = std::countr_zero(c);
      if ((covered >> v) & 1u) continue;
      std::uint64_t self = std::uint64_t{1} << v;
      for (std::uint64_t d = cell; d; d &= d - 1) {
        int u = std::countr_zero(d);
        std::uint64_t us = std::uint64_t{1} << u;
        if ((adj[u] & ~self) == (adj[v] & ~us)) covered |= us;
      }
      std::vector<std::uint64_t> next = cells;
      next[idx] = self;
      next.insert(next.begin() + static_cast<long>(idx) + 1, cell & ~self);
      search(std::move(next));
    }
  };
  search(start);
  return best;
}

inline SimpleGraph canonicalForm(const SimpleGraph& g) {
  return SimpleGraph::fromAdjacency(canonicalAdjacency(g.adjacency()));
}

inline bool graphsIsomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.vertexCount != b.vertexCount || a.edgeCount() != b.edgeCount()) return false;
  return canonicalAdjacency(a.adjacency()) == canonicalAdjacency(b.adjacency());
}

namespace detail {

struct AdjHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = 0x9E3779B97F4A7C15ull;
    for (auto x : v) h = (h ^ x) * 0x100000001B3ull + (h >> 29);
    return h;
  }
};

}  // namespace detail

/// All graphs on n vertices up to isomorphism (canonical adjacency), built by
/// adding a vertex with every possible neighbourhood to each graph on n-1.
inline std::vector<std::vector<std::uint64_t>> allGraphs(int n) {
  if (n < 0 || n > 10) throw DomainError("generated graphs are limited to 10 vertices");
  std::vector<std::vector<std::uint64_t>> level{std::vector<std::uint64_t>{}};
  for (int k = 1; k <= n; ++k) {
    std::unordered_set<std::vector<std::uint64_t>, detail::AdjHash> seen;
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& base : level) {
      for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (k - 1)); ++nb) {
        Budget::tick();
        std::vector<std::uint64_t> adj = base;
        adj.push_back(nb);
        for (int v = 0; v < k - 1; ++v)
          if ((nb >> v) & 1u) adj[v] |= std::uint64_t{1} << (k - 1);
        auto canon = canonicalAdjacency(adj);
        if (seen.insert(canon).second) next.push_back(std::move(canon));
      }
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return level;
}

/// 3-connected simple graphs with 4..maxVertices vertices, pairwise
/// non-isomorphic, ordered by (vertices, edges, graph6).
inline std::vector<SimpleGraph> generatedCorpus(int maxVertices) {
  if (maxVertices > 10) throw DomainError("generated corpus is capped at 10 vertices; use a graph6 file");
  std::vector<SimpleGraph> out;
  for (int n = 4; n <= maxVertices; ++n) {
    std::vector<SimpleGraph> batch;
    for (const auto& adj : allGraphs(n)) {
      if (isThreeVertexConnected(adj)) batch.push_back(SimpleGraph::fromAdjacency(adj));
    }
    std::sort(batch.begin(), batch.end(), [](const SimpleGraph& a, const SimpleGraph& b) {
      if (a.edgeCount() != b.edgeCount()) return a.edgeCount() < b.edgeCount();
      return emitGraph6(a) < emitGraph6(b);
    });
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

/// Reads a graph6 file and keeps the 3-connected graphs with at most
/// maxVertices vertices, dropping isomorphic repeats.
inline std::vector<SimpleGraph> fileCorpus(const std::string& path, int maxVertices = 62) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph6 file: " + path);
  std::vector<SimpleGraph> out;
  std::unordered_set<std::vector<std::uint64_t>, detail::AdjHash> seen;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t lineStart = offset;
    offset += line.size() + 1;
    if (line.empty() || line[0] == '#') continue;
    SimpleGraph g;
    try {
      g = parseGraph6(line);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what(), lineStart + e.offset());
    }
    if (g.vertexCount > maxVertices || !isThreeConnectedGraph(g)) continue;
    if (seen.insert(canonicalAdjacency(g.adjacency())).second) out.push_back(g);
  }
  return out;
}

}  // namespace splitter
