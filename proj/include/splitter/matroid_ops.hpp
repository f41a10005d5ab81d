#pragma once

#include <algorithm>
#include <functional>
#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "splitter/element_set.hpp"
#include "splitter/errors.hpp"
#include "splitter/matroid.hpp"
#include "splitter/multigraph.hpp"

namespace splitter {

enum class Side { Primal, Dual };
enum class CycleKind { Circuits, Cocircuits };

/// Family of subsets tagged with what they are.
struct SubsetFamily {
  enum class Kind { Circuits, Cocircuits, Flats, Separations };
  Kind kind = Kind::Circuits;
  std::vector<ElementSet> members;
};

// ---------------------------------------------------------------------------
// Closure

/// cl(S) in M (Side::Primal) or cl*(S) (Side::Dual).
inline ElementSet span(const Matroid& m, ElementSet s, Side side = Side::Primal) {
  ElementSet out = s;
  if (side == Side::Primal) {
    int r = m.rank(s);
    for (ElementId e : m.ground() - s)
      if (m.rank(s.with(e)) == r) out.insert(e);
  } else {
    int r = m.corank(s);
    for (ElementId e : m.ground() - s)
      if (m.corank(s.with(e)) == r) out.insert(e);
  }
  return out;
}

inline bool isFlat(const Matroid& m, ElementSet s) { return span(m, s) == s; }

inline bool isCircuit(const Matroid& m, ElementSet c) {
  if (c.empty()) return false;
  int k = c.size();
  if (m.rank(c) != k - 1) return false;
  for (ElementId e : c)
    if (m.rank(c.without(e)) != k - 1) return false;
  return true;
}

/// D is a cocircuit iff E - D is a hyperplane.
inline bool isCocircuit(const Matroid& m, ElementSet d) {
  if (d.empty()) return false;
  ElementSet h = m.ground() - d;
  if (m.rank(h) != m.rank() - 1) return false;
  for (ElementId e : d)
    if (m.rank(h.with(e)) != m.rank()) return false;
  return true;
}

inline ElementSet loops(const Matroid& m) {
  ElementSet out;
  for (ElementId e : m.ground())
    if (m.rank(ElementSet::single(e)) == 0) out.insert(e);
  return out;
}

inline ElementSet coloops(const Matroid& m) {
  ElementSet out;
  for (ElementId e : m.ground())
    if (m.rank(m.ground().without(e)) < m.rank()) out.insert(e);
  return out;
}

/// Greedy basis of S, scanning labels in increasing order.
inline ElementSet basisOf(const Matroid& m, ElementSet s) {
  ElementSet b;
  for (ElementId e : s)
    if (m.rank(b.with(e)) > b.size()) b.insert(e);
  return b;
}

/// Fundamental circuit of e with respect to an independent set I spanning e.
inline ElementSet fundamentalCircuit(const Matroid& m, ElementSet independent, ElementId e) {
  ElementSet c = ElementSet::single(e);
  int r = m.rank(independent);
  for (ElementId x : independent)
    if (m.rank(independent.without(x).with(e)) == r) c.insert(x);
  return c;
}

// ---------------------------------------------------------------------------
// Simplification

/// Result of si/co: the reduced matroid and, for every original element, the
/// survivor that represents it (-1 for removed loops or coloops).
struct Reduction {
  Matroid matroid;
  std::array<ElementId, kMaxElements> representative{};
};

inline Reduction simplify(const Matroid& m) {
  Reduction out;
  out.representative.fill(-1);
  ElementSet removed;
  std::vector<ElementId> reps;
  for (ElementId e : m.ground()) {
    if (m.rank(ElementSet::single(e)) == 0) {
      removed.insert(e);
      continue;
    }
    ElementId rep = e;
    for (ElementId f : reps) {
      if (m.rank(ElementSet{e, f}) == 1) {
        rep = f;
        break;
      }
    }
    out.representative[e] = rep;
    if (rep == e) reps.push_back(e);
    else removed.insert(e);
  }
  out.matroid = m.deleteSet(removed);
  return out;
}

inline Reduction cosimplify(const Matroid& m) {
  Reduction r = simplify(m.dual());
  r.matroid = r.matroid.dual();
  return r;
}

inline bool isSimple(const Matroid& m) { return simplify(m).matroid.size() == m.size(); }
inline bool isCosimple(const Matroid& m) { return cosimplify(m).matroid.size() == m.size(); }

// ---------------------------------------------------------------------------
// Circuits and cocircuits

/// Minimal dependent sets (of M or of M*), lexicographically ordered.
/// Enumeration walks the independent sets in increasing label order; a circuit
/// is recorded exactly once, from its prefix C - max(C).
inline SubsetFamily cycles(const Matroid& m, CycleKind kind, int sizeCap = kMaxElements + 1,
                           std::int64_t maxMembers = 5'000'000) {
  Matroid target = kind == CycleKind::Circuits ? m : m.dual();
  target.materialize();
  SubsetFamily fam;
  fam.kind = kind == CycleKind::Circuits ? SubsetFamily::Kind::Circuits : SubsetFamily::Kind::Cocircuits;
  std::vector<ElementId> elems = target.ground().toVector();
  int n = static_cast<int>(elems.size());

  // Loops are the one-element circuits.
  std::vector<ElementId> nonLoops;
  for (ElementId e : elems) {
    if (target.rank(ElementSet::single(e)) == 0) {
      if (sizeCap >= 1) fam.members.push_back(ElementSet::single(e));
    } else {
      nonLoops.push_back(e);
    }
  }
  (void)n;
  std::vector<int> pos(kMaxElements, -1);
  for (std::size_t i = 0; i < nonLoops.size(); ++i) pos[nonLoops[i]] = static_cast<int>(i);

  // Iterative DFS over independent sets (of non-loops).
  struct Frame {
    ElementSet set;
    int next;
  };
  std::vector<Frame> stack;
  stack.push_back({ElementSet{}, 0});
  while (!stack.empty()) {
    Budget::tick();
    Frame& f = stack.back();
    if (f.next >= static_cast<int>(nonLoops.size())) {
      stack.pop_back();
      continue;
    }
    ElementId e = nonLoops[f.next++];
    ElementSet s = f.set;
    ElementSet t = s.with(e);
    int k = s.size();
    if (target.rank(t) == k + 1) {
      if (k + 1 < sizeCap) stack.push_back({t, pos[e] + 1});
      continue;
    }
    if (k + 1 > sizeCap) continue;
    // t is dependent and s independent: t is a circuit iff every x in s is needed.
    bool circuit = true;
    for (ElementId x : s) {
      if (target.rank(t.without(x)) != k) {
        circuit = false;
        break;
      }
    }
    if (circuit) {
      fam.members.push_back(t);
      if (static_cast<std::int64_t>(fam.members.size()) > maxMembers) {
        throw ResourceError("circuit enumeration exceeded member budget", static_cast<std::int64_t>(fam.members.size()));
      }
    }
  }
  std::sort(fam.members.begin(), fam.members.end(), [](ElementSet a, ElementSet b) { return lexLess(a, b); });
  return fam;
}

inline SubsetFamily circuits(const Matroid& m, int sizeCap = kMaxElements + 1) {
  return cycles(m, CycleKind::Circuits, sizeCap);
}
inline SubsetFamily cocircuits(const Matroid& m, int sizeCap = kMaxElements + 1) {
  return cycles(m, CycleKind::Cocircuits, sizeCap);
}

/// All flats of a given rank, as closures of independent sets of that size.
inline std::vector<ElementSet> flatsOfRank(const Matroid& m, int r) {
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<ElementSet> out;
  if (r == 0) {
    out.push_back(span(m, {}));
    return out;
  }
  ElementSet nonLoops = m.ground() - loops(m);
  // Recursive extension keeps the work proportional to the number of flats.
  std::vector<ElementSet> level{span(m, {})};
  for (int k = 1; k <= r; ++k) {
    std::unordered_set<ElementSet, ElementSetHash> nextSeen;
    std::vector<ElementSet> next;
    for (ElementSet f : level) {
      for (ElementId e : nonLoops - f) {
        Budget::tick();
        ElementSet g = span(m, f.with(e));
        if (nextSeen.insert(g).second) next.push_back(g);
      }
    }
    level = std::move(next);
  }
  for (ElementSet f : level)
    if (seen.insert(f).second) out.push_back(f);
  std::sort(out.begin(), out.end(), [](ElementSet a, ElementSet b) { return lexLess(a, b); });
  return out;
}

// ---------------------------------------------------------------------------
// Connectivity

/// λ(S) = r(S) + r(E - S) - r(M).
inline int lambda(const Matroid& m, ElementSet s) {
  if (m.size() == 0) throw DomainError("connectivity function needs a nonempty ground set");
  return m.rank(s) + m.rank(m.ground() - s) - m.rank();
}

/// Connected components, via the fundamental-circuit graph of a basis.
inline std::vector<ElementSet> components(const Matroid& m) {
  ElementSet b = basisOf(m, m.ground());
  std::vector<ElementId> elems = m.ground().toVector();
  std::array<int, kMaxElements> parent{};
  for (ElementId e : elems) parent[e] = e;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int r = m.rank();
  for (ElementId x : m.ground() - b) {
    for (ElementId y : b) {
      if (m.rank(b.without(y).with(x)) == r) {
        int a = find(x), c = find(y);
        if (a != c) parent[a] = c;
      }
    }
  }
  std::map<int, ElementSet> groups;
  for (ElementId e : elems) groups[find(e)].insert(e);
  std::vector<ElementSet> out;
  for (auto& [_, s] : groups) out.push_back(s);
  std::sort(out.begin(), out.end(), [](ElementSet a, ElementSet c) { return lexLess(a, c); });
  return out;
}

inline bool isConnected(const Matroid& m) { return m.size() <= 1 || components(m).size() == 1; }

namespace detail {

/// Search for a partition (A, B) with some j < k satisfying
/// λ(A) <= j - 1 and size/rank lower bounds of j on both sides.
template <typename Bound>
bool hasSeparation(const Matroid& m, int k, Bound&& sideOk) {
  int n = m.size();
  if (n <= 1) return false;
  if (n > 26) throw ResourceError("exhaustive separation scan limited to 26 elements");
  m.materialize();
  ElementId first = m.ground().first();
  ElementSet rest = m.ground().without(first);
  int r = m.rank();
  bool found = false;
  // A always contains the smallest label; B = E - A must be nonempty.
  std::uint64_t restBits = rest.bits();
  std::uint64_t sub = 0;
  while (true) {
    Budget::tick();
    ElementSet a = ElementSet(sub).with(first);
    ElementSet bside = m.ground() - a;
    if (!bside.empty()) {
      int ra = m.rank(a), rb = m.rank(bside);
      int lam = ra + rb - r;
      for (int j = 1; j < k; ++j) {
        if (lam <= j - 1 && sideOk(a, ra, j) && sideOk(bside, rb, j)) {
          found = true;
          break;
        }
      }
      if (found) return true;
    }
    if (sub == restBits) break;
    sub = (sub - restBits) & restBits;
  }
  return false;
}

inline bool graphIsTutte3Connected(const Multigraph& g) {
  Multigraph h = g.withoutIsolatedVertices();
  if (h.vertexCount < 4 || 2 * h.edges.size() < 3 * h.vertexCount) return false;
  if (!h.isSimple()) return false;
  return isThreeVertexConnected(h.adjacency());
}

}  // namespace detail

/// Tutte 3-connectivity: no 1-separation and no 2-separation.
/// Any matroid with a loop and at least two elements fails this.
inline bool isTutte3Connected(const Matroid& m) {
  if (m.size() >= 4) {
    if (const Multigraph* g = m.graph()) return detail::graphIsTutte3Connected(*g);
  }
  if (m.size() >= 2 && !loops(m).empty()) return false;
  if (m.size() >= 2 && !coloops(m).empty()) return false;
  if (!isConnected(m)) return false;
  return !detail::hasSeparation(m, 3, [](ElementSet side, int, int j) { return side.size() >= j; });
}

/// Tutte k-connectivity by exhaustive scan.
inline bool isTutteKConnected(const Matroid& m, int k) {
  if (k == 3) return isTutte3Connected(m);
  return !detail::hasSeparation(m, k, [](ElementSet side, int, int j) { return side.size() >= j; });
}

/// No vertical j-separation for j < k.
inline bool isVerticallyKConnected(const Matroid& m, int k) {
  if (k == 3 && m.graph() != nullptr) {
    // si(M) is 3-connected exactly when M is vertically 3-connected.
    return isTutte3Connected(simplify(m).matroid);
  }
  return !detail::hasSeparation(m, k, [](ElementSet, int rankSide, int j) { return rankSide >= j; });
}

/// Exhaustive version that never takes the graph shortcut (used to cross-check it).
inline bool isVerticallyKConnectedExhaustive(const Matroid& m, int k) {
  return !detail::hasSeparation(m, k, [](ElementSet, int rankSide, int j) { return rankSide >= j; });
}

/// No vertical 1-separation.
inline bool isVerticallyConnected(const Matroid& m) { return isVerticallyKConnected(m, 2); }

// ---------------------------------------------------------------------------
// Isomorphism

/// Bijection between ground sets: map[label in first] = label in second.
using ElementMap = std::array<ElementId, kMaxElements>;

namespace detail {

struct IsoData {
  std::vector<ElementSet> circuits;
  std::unordered_set<ElementSet, ElementSetHash> circuitSet;
  std::array<std::vector<int>, kMaxElements> containing;  // circuit indices per element
  std::array<std::vector<int>, kMaxElements> signature;

  explicit IsoData(const Matroid& m) {
    circuits = splitter::circuits(m).members;
    auto cocs = splitter::cocircuits(m).members;
    circuitSet.insert(circuits.begin(), circuits.end());
    for (std::size_t i = 0; i < circuits.size(); ++i)
      for (ElementId e : circuits[i]) containing[e].push_back(static_cast<int>(i));
    int n = m.size();
    for (ElementId e : m.ground()) {
      std::vector<int> sig(2 * (n + 2), 0);
      for (int ci : containing[e]) ++sig[circuits[ci].size()];
      for (ElementSet c : cocs)
        if (c.contains(e)) ++sig[n + 2 + c.size()];
      signature[e] = std::move(sig);
    }
  }
};

inline std::vector<int> sizeHistogram(const std::vector<ElementSet>& fam, int n) {
  std::vector<int> h(n + 2, 0);
  for (ElementSet s : fam) ++h[s.size()];
  return h;
}

}  // namespace detail

/// Rank-preserving bijection from a onto b, or nullopt. Invariant prefilter
/// (size, rank, circuit histogram, per-element signatures) then backtracking
/// that keeps circuits mapped onto circuits.
inline std::optional<ElementMap> isIsomorphic(const Matroid& a, const Matroid& b, int maxElements = 20) {
  if (a.size() != b.size() || a.rank() != b.rank()) return std::nullopt;
  if (a.size() > maxElements) throw ResourceError("isomorphism search limited to " + std::to_string(maxElements) + " elements");
  int n = a.size();
  ElementMap map;
  map.fill(-1);
  if (n == 0) return map;
  detail::IsoData da(a), db(b);
  if (da.circuits.size() != db.circuits.size()) return std::nullopt;
  if (detail::sizeHistogram(da.circuits, n) != detail::sizeHistogram(db.circuits, n)) return std::nullopt;

  std::vector<ElementId> aElems = a.ground().toVector();
  std::vector<ElementId> bElems = b.ground().toVector();
  {
    std::vector<std::vector<int>> sa, sb;
    for (ElementId e : aElems) sa.push_back(da.signature[e]);
    for (ElementId e : bElems) sb.push_back(db.signature[e]);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // Order: elements with the rarest signature first, then by circuit overlap with the prefix.
  std::vector<ElementId> order;
  {
    std::vector<ElementId> pool = aElems;
    auto classSize = [&](ElementId e) {
      int c = 0;
      for (ElementId f : aElems)
        if (da.signature[f] == da.signature[e]) ++c;
      return c;
    };
    ElementSet placed;
    while (!pool.empty()) {
      auto best = pool.begin();
      int bestScore = -1;
      for (auto it = pool.begin(); it != pool.end(); ++it) {
        int overlap = 0;
        for (int ci : da.containing[*it])
          if (da.circuits[ci].intersects(placed)) ++overlap;
        int score = overlap * 64 + (64 - classSize(*it));
        if (score > bestScore) {
          bestScore = score;
          best = it;
        }
      }
      order.push_back(*best);
      placed.insert(*best);
      pool.erase(best);
    }
  }

  ElementSet usedB, placedA;
  ElementMap inverse;
  inverse.fill(-1);
  auto consistent = [&](ElementId x, ElementId y) {
    for (int ci : da.containing[x]) {
      ElementSet c = da.circuits[ci];
      if (!placedA.containsAll(c.without(x))) continue;
      ElementSet img = ElementSet::single(y);
      for (ElementId e : c.without(x)) img.insert(map[e]);
      if (!db.circuitSet.count(img)) return false;
    }
    for (int ci : db.containing[y]) {
      ElementSet c = db.circuits[ci];
      if (!usedB.containsAll(c.without(y))) continue;
      ElementSet pre = ElementSet::single(x);
      for (ElementId e : c.without(y)) pre.insert(inverse[e]);
      if (!da.circuitSet.count(pre)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    Budget::tick();
    ElementId x = order[depth];
    for (ElementId y : bElems) {
      if (usedB.contains(y) || db.signature[y] != da.signature[x]) continue;
      if (!consistent(x, y)) continue;
      map[x] = y;
      inverse[y] = x;
      usedB.insert(y);
      placedA.insert(x);
      if (search(depth + 1)) return true;
      map[x] = -1;
      inverse[y] = -1;
      usedB.erase(y);
      placedA.erase(x);
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return map;
}

/// Checks a claimed isomorphism against every subset's rank (at most 24 elements).
inline bool verifyIsomorphism(const Matroid& a, const Matroid& b, const ElementMap& map) {
  if (a.size() != b.size() || a.size() > 24) return false;
  ElementSet image;
  for (ElementId e : a.ground()) {
    if (map[e] < 0 || !b.ground().contains(map[e]) || image.contains(map[e])) return false;
    image.insert(map[e]);
  }
  a.materialize();
  b.materialize();
  bool ok = true;
  forEachSubset(a.ground(), [&](ElementSet s) {
    if (!ok) return;
    ElementSet t;
    for (ElementId e : s) t.insert(map[e]);
    if (a.rank(s) != b.rank(t)) ok = false;
  });
  return ok;
}

/// Copy of m with labels renamed through map (old label -> new label).
inline Matroid relabel(const Matroid& m, const ElementMap& map) {
  std::vector<ElementId> elems = m.ground().toVector();
  ElementSet newGround;
  for (ElementId e : elems) newGround.insert(map[e]);
  std::vector<ElementId> newElems = newGround.toVector();
  std::vector<std::uint8_t> table(std::size_t{1} << elems.size());
  if (elems.size() > 24) throw ResourceError("relabel limited to 24 elements");
  for (std::size_t i = 0; i < table.size(); ++i) {
    ElementSet s;
    for (std::size_t b = 0; b < newElems.size(); ++b) {
      if (!((i >> b) & 1u)) continue;
      // find old label mapping to newElems[b]
      for (ElementId e : elems)
        if (map[e] == newElems[b]) s.insert(e);
    }
    table[i] = static_cast<std::uint8_t>(m.rank(s));
  }
  return explicitMatroid(newGround, std::move(table));
}

// ---------------------------------------------------------------------------
// Explicit text format: "E <n>", "R <r>", then one line per basis listing
// sorted element indices (positions in increasing label order).

inline void writeExplicit(std::ostream& os, const Matroid& m) {
  if (m.size() > 24) throw ResourceError("explicit format limited to 24 elements");
  std::vector<ElementId> elems = m.ground().toVector();
  std::vector<int> pos(kMaxElements, -1);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
  os << "E " << m.size() << "\n" << "R " << m.rank() << "\n";
  forEachSubsetOfSize(m.ground(), m.rank(), [&](ElementSet b) {
    if (m.rank(b) == b.size()) {
      bool first = true;
      for (ElementId e : b) {
        os << (first ? "" : " ") << pos[e];
        first = false;
      }
      os << "\n";
    }
    return true;
  });
}

inline Matroid readExplicit(std::istream& is) {
  std::string line;
  std::size_t offset = 0;
  auto nextLine = [&](std::string& out) {
    if (!std::getline(is, out)) return false;
    offset += out.size() + 1;
    return true;
  };
  int n = -1, r = -1;
  char tag = 0;
  if (!nextLine(line)) throw ParseError("missing E line", offset);
  {
    std::istringstream ss(line);
    if (!(ss >> tag >> n) || tag != 'E' || n < 0 || n > 24) throw ParseError("bad E line", 0);
  }
  std::size_t rOffset = offset;
  if (!nextLine(line)) throw ParseError("missing R line", offset);
  {
    std::istringstream ss(line);
    if (!(ss >> tag >> r) || tag != 'R' || r < 0 || r > n) throw ParseError("bad R line", rOffset);
  }
  std::vector<ElementSet> bases;
  while (true) {
    std::size_t lineOffset = offset;
    if (!nextLine(line)) break;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (r == 0 && bases.empty()) bases.push_back({});
      continue;
    }
    std::istringstream ss(line);
    ElementSet b;
    int e;
    while (ss >> e) {
      if (e < 0 || e >= n) throw ParseError("element index out of range", lineOffset);
      b.insert(e);
    }
    if (!ss.eof()) throw ParseError("non-numeric token in basis line", lineOffset);
    if (b.size() != r) throw ParseError("basis has wrong size", lineOffset);
    bases.push_back(b);
  }
  if (r == 0 && bases.empty()) bases.push_back({});
  if (bases.empty()) throw ParseError("no bases listed", offset);
  return matroidFromBases(ElementSet::range(n), bases);
}

}  // namespace splitter
