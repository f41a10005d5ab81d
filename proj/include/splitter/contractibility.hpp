#pragma once

#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitter/element_set.hpp"
#include "splitter/errors.hpp"
#include "splitter/graph.hpp"
#include "splitter/matroid.hpp"
#include "splitter/matroid_ops.hpp"

namespace splitter {

/// N ≅ M / contractSet \ deleteSet; map[label in N] = label in M.
struct MinorWitnessMatroid {
  ElementSet contractSet;
  ElementSet deleteSet;
  ElementMap map{};
};

namespace detail {

/// Exact structural key: graph kinds by their labeled multigraph, small
/// matroids by their rank table. Empty string means "do not memoize".
inline std::string structureKey(const Matroid& m) {
  std::string key;
  auto put64 = [&](std::uint64_t x) { key.append(reinterpret_cast<const char*>(&x), sizeof x); };
  if (const Multigraph* g = m.graph()) {
    key += m.backend() == Backend::Graphic ? 'g' : 'c';
    put64(static_cast<std::uint64_t>(g->vertexCount));
    put64(m.ground().bits());
    for (ElementId e : m.ground()) {
      key += static_cast<char>(g->ends[e].u);
      key += static_cast<char>(g->ends[e].v);
    }
    return key;
  }
  if (m.size() > 16) return {};
  key += 't';
  put64(m.ground().bits());
  m.materialize();
  std::vector<ElementId> elems = m.ground().toVector();
  for (std::size_t i = 0; i < (std::size_t{1} << elems.size()); ++i) {
    ElementSet s;
    for (std::size_t b = 0; b < elems.size(); ++b)
      if ((i >> b) & 1u) s.insert(elems[b]);
    key += static_cast<char>(m.rank(s));
  }
  return key;
}

class MinorMemo {
 public:
  static MinorMemo& instance() {
    static MinorMemo memo;
    return memo;
  }
  bool lookup(const std::string& key, std::optional<MinorWitnessMatroid>& out) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return false;
    out = it->second;
    return true;
  }
  void store(const std::string& key, const std::optional<MinorWitnessMatroid>& value) {
    std::unique_lock lock(mutex_);
    table_.emplace(key, value);  // first writer wins; values are identical anyway
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }
  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::optional<MinorWitnessMatroid>> table_;
};

inline bool graphRouteApplies(const Matroid& m, const Matroid& n) {
  const Multigraph* gm = m.graph();
  const Multigraph* gn = n.graph();
  if (!gm || !gn || m.backend() != n.backend()) return false;
  Multigraph h = gn->withoutIsolatedVertices();
  if (!h.isSimple() || h.vertexCount > 64) return false;
  std::uint64_t all = h.vertexCount == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h.vertexCount) - 1;
  if (!inducedConnected(h.adjacency(), all)) return false;
  // The graph of a 3-connected graphic matroid is unique, so graph minors and
  // matroid minors agree.
  return isTutte3Connected(n);
}

inline std::optional<MinorWitnessMatroid> graphMinor(const Matroid& m, const Matroid& n) {
  Multigraph h = n.graph()->withoutIsolatedVertices();
  auto w = graphHasMinor(*m.graph(), h);
  if (!w) return std::nullopt;
  MinorWitnessMatroid out;
  out.map = w->edgeMap;
  if (m.backend() == Backend::Graphic) {
    out.contractSet = w->contractedEdges;
    out.deleteSet = w->deletedEdges;
  } else {
    out.contractSet = w->deletedEdges;
    out.deleteSet = w->contractedEdges;
  }
  return out;
}

/// Flats of rank r(M) - r(N), then spanning subsets of si(M/F) of size |E(N)|.
/// Valid when N is simple: elements of cl(I) - I would be loops of M/I, and
/// parallel representatives are interchangeable.
inline std::optional<MinorWitnessMatroid> genericMinor(const Matroid& m, const Matroid& n) {
  int k = m.rank() - n.rank();
  int target = n.size();
  bool nSimple = isSimple(n);
  m.materialize();
  if (nSimple) {
    for (ElementSet flat : flatsOfRank(m, k)) {
      Matroid q = m.contract(flat);
      Reduction si = simplify(q);
      ElementSet reps = si.matroid.ground();
      if (reps.size() < target) continue;
      std::optional<MinorWitnessMatroid> found;
      forEachSubsetOfSize(reps, target, [&](ElementSet s) {
        Budget::tick();
        if (q.rank(s) != n.rank()) return true;
        Matroid candidate = q.restrict(s);
        auto iso = isIsomorphic(n, candidate);
        if (!iso) return true;
        MinorWitnessMatroid w;
        w.contractSet = basisOf(m, flat);
        w.deleteSet = m.ground() - w.contractSet - s;
        w.map = *iso;
        found = w;
        return false;
      });
      if (found) return found;
    }
    return std::nullopt;
  }
  // General fallback: independent contraction sets of size k.
  std::optional<MinorWitnessMatroid> found;
  forEachSubsetOfSize(m.ground(), k, [&](ElementSet i) {
    if (!m.isIndependent(i)) return true;
    Matroid q = m.contract(i);
    forEachSubsetOfSize(q.ground(), target, [&](ElementSet s) {
      Budget::tick();
      if (q.rank(s) != n.rank()) return true;
      auto iso = isIsomorphic(n, q.restrict(s));
      if (!iso) return true;
      found = MinorWitnessMatroid{i, q.ground() - s, *iso};
      return false;
    });
    return !found;
  });
  return found;
}

}  // namespace detail

/// Does M have an N-minor? The empty matroid is a minor of everything.
inline std::optional<MinorWitnessMatroid> hasMinor(const Matroid& m, const Matroid& n) {
  MinorWitnessMatroid trivial;
  trivial.map.fill(-1);
  if (n.size() == 0) {
    trivial.contractSet = basisOf(m, m.ground());
    trivial.deleteSet = m.ground() - trivial.contractSet;
    return trivial;
  }
  if (n.size() > m.size() || n.rank() > m.rank()) return std::nullopt;
  if (n.size() - n.rank() > m.size() - m.rank()) return std::nullopt;

  std::string km = detail::structureKey(m), kn = detail::structureKey(n);
  std::string key;
  if (!km.empty() && !kn.empty()) {
    key = km + '|' + kn;
    std::optional<MinorWitnessMatroid> cached;
    if (detail::MinorMemo::instance().lookup(key, cached)) return cached;
  }
  std::optional<MinorWitnessMatroid> result;
  if (detail::graphRouteApplies(m, n)) {
    result = detail::graphMinor(m, n);
  } else {
    if (m.size() > 24) throw ResourceError("generic minor search limited to 24 elements");
    result = detail::genericMinor(m, n);
  }
  if (!key.empty()) detail::MinorMemo::instance().store(key, result);
  return result;
}

/// Re-checks a witness from scratch (isomorphism by rank table, small N only).
inline bool verifyMinorWitness(const Matroid& m, const Matroid& n, const MinorWitnessMatroid& w) {
  if (w.contractSet.intersects(w.deleteSet) || !m.ground().containsAll(w.contractSet | w.deleteSet)) return false;
  Matroid q = m.minor(w.contractSet, w.deleteSet);
  if (q.size() != n.size()) return false;
  if (n.size() == 0) return true;
  if (n.size() > 24) return false;
  return verifyIsomorphism(n, q, w.map);
}

// ---------------------------------------------------------------------------
// Classification

struct ElementClassification {
  ElementId element = -1;
  bool nDeletable = false;
  bool cyclicallyNDeletable = false;
  bool nContractible = false;
  bool verticallyNContractible = false;
  std::optional<MinorWitnessMatroid> deletionWitness;
  std::optional<MinorWitnessMatroid> contractionWitness;
};

/// 3-connected with an N-minor.
inline bool threeConnectedWithMinor(const Matroid& m, const Matroid& n) {
  if (!isTutte3Connected(m)) return false;
  return n.size() == 0 || hasMinor(m, n).has_value();
}

inline bool isNContractibleSet(const Matroid& m, const Matroid& n, ElementSet s) {
  return threeConnectedWithMinor(m.contract(s), n);
}

inline bool isVerticallyContractibleSet(const Matroid& m, const Matroid& n, ElementSet s) {
  if (s.empty()) throw DomainError("vertical contractibility needs a nonempty set");
  return threeConnectedWithMinor(simplify(m.contract(s)).matroid, n);
}

inline bool isNDeletableSet(const Matroid& m, const Matroid& n, ElementSet s) {
  return threeConnectedWithMinor(m.deleteSet(s), n);
}

inline bool isCyclicallyDeletableSet(const Matroid& m, const Matroid& n, ElementSet s) {
  return threeConnectedWithMinor(cosimplify(m.deleteSet(s)).matroid, n);
}

inline ElementClassification classifyElement(const Matroid& m, const Matroid& n, ElementId e) {
  if (!m.ground().contains(e)) throw DomainError("element " + std::to_string(e) + " is not in the ground set");
  ElementClassification c;
  c.element = e;
  ElementSet s = ElementSet::single(e);
  Matroid del = m.deleteSet(s);
  Matroid con = m.contract(s);
  c.nDeletable = threeConnectedWithMinor(del, n);
  c.cyclicallyNDeletable = c.nDeletable || threeConnectedWithMinor(cosimplify(del).matroid, n);
  c.nContractible = threeConnectedWithMinor(con, n);
  c.verticallyNContractible = c.nContractible || threeConnectedWithMinor(simplify(con).matroid, n);
  if (c.nDeletable && n.size()) c.deletionWitness = hasMinor(del, n);
  if (c.nContractible && n.size()) c.contractionWitness = hasMinor(con, n);
  return c;
}

/// Sets of elements by flag; computed once per (M, N) by the callers that need them.
struct ElementFlags {
  ElementSet deletable;
  ElementSet cyclicallyDeletable;
  ElementSet contractible;
  ElementSet verticallyContractible;
};

inline ElementFlags classifyAll(const Matroid& m, const Matroid& n) {
  ElementFlags f;
  for (ElementId e : m.ground()) {
    ElementClassification c = classifyElement(m, n, e);
    if (c.nDeletable) f.deletable.insert(e);
    if (c.cyclicallyNDeletable) f.cyclicallyDeletable.insert(e);
    if (c.nContractible) f.contractible.insert(e);
    if (c.verticallyNContractible) f.verticallyContractible.insert(e);
  }
  return f;
}

inline ElementSet verticallyContractibleElements(const Matroid& m, const Matroid& n) {
  ElementSet out;
  for (ElementId e : m.ground())
    if (isVerticallyContractibleSet(m, n, ElementSet::single(e))) out.insert(e);
  return out;
}

inline ElementSet deletableElements(const Matroid& m, const Matroid& n) {
  ElementSet out;
  for (ElementId e : m.ground())
    if (isNDeletableSet(m, n, ElementSet::single(e))) out.insert(e);
  return out;
}

inline ElementSet contractibleElements(const Matroid& m, const Matroid& n) {
  ElementSet out;
  for (ElementId e : m.ground())
    if (isNContractibleSet(m, n, ElementSet::single(e))) out.insert(e);
  return out;
}

// ---------------------------------------------------------------------------
// Replaceability

struct Replacement {
  bool replaceable = false;
  ElementSet spanning;  ///< the set I of vertically N-contractible elements
};

/// p ∈ cl(S ∪ I) − cl(S) for some I ⊆ `contractible` (the vertically
/// N-contractible elements). Closure is monotone, so I = all of them decides it;
/// the witness is then shrunk greedily.
inline Replacement isReplaceable(const Matroid& m, ElementId p, ElementSet s, ElementSet contractible) {
  if (s.contains(p)) throw DomainError("replaceability needs p outside S");
  Replacement out;
  int rs = m.rank(s);
  if (m.rank(s.with(p)) == rs) return out;  // p ∈ cl(S)
  ElementSet pool = contractible - s;
  auto spans = [&](ElementSet i) { return m.rank(s | i | ElementSet::single(p)) == m.rank(s | i); };
  if (!spans(pool)) return out;
  ElementSet i = pool;
  for (ElementId e : pool)
    if (spans(i.without(e))) i.erase(e);
  out.replaceable = true;
  out.spanning = i;
  return out;
}

inline Replacement isReplaceable(const Matroid& m, const Matroid& n, ElementId p, ElementSet s) {
  return isReplaceable(m, p, s, verticallyContractibleElements(m, n));
}

}  // namespace splitter
