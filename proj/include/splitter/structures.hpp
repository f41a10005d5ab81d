#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "splitter/contractibility.hpp"
#include "splitter/element_set.hpp"
#include "splitter/errors.hpp"
#include "splitter/matroid.hpp"
#include "splitter/matroid_ops.hpp"

namespace splitter {

struct SmallStructures {
  std::vector<ElementSet> triangles;
  std::vector<ElementSet> triads;
  std::vector<ElementSet> nontrivialLines;
};

inline std::vector<ElementSet> triangles(const Matroid& m) {
  std::vector<ElementSet> out;
  for (ElementSet c : circuits(m, 3).members)
    if (c.size() == 3) out.push_back(c);
  return out;
}

inline std::vector<ElementSet> triads(const Matroid& m) {
  std::vector<ElementSet> out;
  for (ElementSet c : cocircuits(m, 3).members)
    if (c.size() == 3) out.push_back(c);
  return out;
}

/// Rank-2 flats with at least three elements.
inline std::vector<ElementSet> nontrivialLines(const Matroid& m) {
  std::vector<ElementSet> out;
  if (m.rank() < 2) return out;
  for (ElementSet f : flatsOfRank(m, 2))
    if ((f - loops(m)).size() >= 3) out.push_back(f);
  return out;
}

inline SmallStructures smallStructures(const Matroid& m) {
  return {triangles(m), triads(m), nontrivialLines(m)};
}

/// Cocircuits of a given rank, as complements of hyperplanes.
inline std::vector<ElementSet> cocircuitsOfRank(const Matroid& m, int r) {
  std::vector<ElementSet> out;
  if (m.rank() == 0) return out;
  for (ElementSet h : flatsOfRank(m, m.rank() - 1)) {
    ElementSet c = m.ground() - h;
    if (m.rank(c) == r) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](ElementSet a, ElementSet b) { return lexLess(a, b); });
  return out;
}

// ---------------------------------------------------------------------------
// Vertbarriers

/// (C*, p): C* a rank-3 cocircuit, p ∈ cl(C*) − C*, and si(M/x,p) 3-connected
/// with an N-minor for the witness x.
struct Vertbarrier {
  ElementSet cocircuit;
  ElementId apex = -1;
  ElementId witness = -1;
  bool connected = true;
  ElementSet line;          ///< when disconnected
  ElementId coloop = -1;    ///< when disconnected
  ElementSet validFor;      ///< the x ∈ C* for which {x, p} was checked vertically N-contractible
};

inline Vertbarrier classifyBarrier(const Matroid& m, ElementSet cocircuit, ElementId p) {
  Vertbarrier vb;
  vb.cocircuit = cocircuit;
  vb.apex = p;
  Matroid h = m.restrict(cocircuit.with(p));
  std::vector<ElementSet> comps = components(h);
  vb.connected = comps.size() == 1;
  if (!vb.connected) {
    ElementSet cl = coloops(h);
    if (cl.size() == 1) {
      vb.coloop = cl.first();
      vb.line = h.ground().without(vb.coloop);
    }
  }
  return vb;
}

/// Every vertbarrier of M. With checkAll, validity is checked for every x ∈ C*
/// separately (and recorded in validFor); otherwise only the first x is checked
/// and the result is recorded for all.
inline std::vector<Vertbarrier> findVertbarriers(const Matroid& m, const Matroid& n, bool checkAll = false) {
  std::vector<Vertbarrier> out;
  if (m.rank() < 3) return out;
  for (ElementSet c : cocircuitsOfRank(m, 3)) {
    ElementSet apexes = span(m, c) - c;
    for (ElementId p : apexes) {
      ElementId x = c.first();
      if (!isVerticallyContractibleSet(m, n, ElementSet{x, p})) continue;
      Vertbarrier vb = classifyBarrier(m, c, p);
      vb.witness = x;
      if (checkAll) {
        for (ElementId y : c)
          if (isVerticallyContractibleSet(m, n, ElementSet{y, p})) vb.validFor.insert(y);
      } else {
        vb.validFor = c;
      }
      out.push_back(vb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Caramboles, triwebs and biwebs

struct Carambole {
  std::vector<ElementId> xs;  ///< hull, x_i paired with y_i
  std::vector<ElementId> ys;  ///< filament
  bool triweb = false;
  bool shortcutCertified = false;  ///< an N-minor in M/{x_i,y_i} or M/{y_i,y_j} was found
  bool directCertified = false;    ///< si(M/L) is 3-connected with an N-minor
  ElementSet hull() const { return ElementSet::of(xs); }
  ElementSet filament() const { return ElementSet::of(ys); }
  std::string toString() const {
    return "hull " + hull().toString() + " filament " + filament().toString();
  }
};

using Triweb = Carambole;

struct Biweb {
  ElementId x1 = -1, x2 = -1, y1 = -1, y2 = -1, y3 = -1;
  bool strict = true;
  ElementSet triangle() const { return ElementSet{y1, y2, y3}; }
  ElementSet elements() const { return ElementSet{x1, x2, y1, y2, y3}; }
  std::string toString() const {
    return "x=(" + std::to_string(x1) + "," + std::to_string(x2) + ") y=(" + std::to_string(y1) + "," +
           std::to_string(y2) + "," + std::to_string(y3) + ")" + (strict ? " strict" : "");
  }
};

/// The structural half of a carambole: L a line with |L| >= 3 and, for each
/// y_i, an x_i with (L − y_i) ∪ x_i a cocircuit. Returns the xs or nullopt.
inline std::optional<std::vector<ElementId>> caramboleHull(const Matroid& m, const std::vector<ElementId>& ys) {
  ElementSet l = ElementSet::of(ys);
  if (ys.size() < 3 || l.size() != static_cast<int>(ys.size()) || m.rank(l) != 2) return std::nullopt;
  std::vector<ElementId> xs;
  for (ElementId y : ys) {
    ElementId found = -1;
    for (ElementId x : m.ground() - l) {
      if (isCocircuit(m, l.without(y).with(x))) {
        found = x;
        break;
      }
    }
    if (found < 0) return std::nullopt;
    xs.push_back(found);
  }
  return xs;
}

/// Certifies a candidate carambole against N. Both certificates are recorded;
/// acceptance rests on the direct one.
inline Carambole certifyCarambole(const Matroid& m, const Matroid& n, std::vector<ElementId> xs,
                                  std::vector<ElementId> ys) {
  Carambole k;
  k.xs = std::move(xs);
  k.ys = std::move(ys);
  k.triweb = k.ys.size() == 3;
  ElementSet l = k.filament();
  if (n.size() == 0) {
    k.shortcutCertified = true;
  } else {
    k.shortcutCertified = hasMinor(m.contract(ElementSet{k.xs[0], k.ys[0]}), n).has_value() ||
                          hasMinor(m.contract(ElementSet{k.ys[0], k.ys[1]}), n).has_value();
  }
  k.directCertified = isVerticallyContractibleSet(m, n, l);
  return k;
}

/// Is ys (with hull xs) an N-carambole of M, by definition?
inline bool isCarambole(const Matroid& m, const Matroid& n, const std::vector<ElementId>& xs,
                        const std::vector<ElementId>& ys) {
  ElementSet l = ElementSet::of(ys);
  if (xs.size() != ys.size() || ys.size() < 3 || l.size() != static_cast<int>(ys.size())) return false;
  if (!m.ground().containsAll(l | ElementSet::of(xs))) return false;
  if (m.rank(l) != 2 || !isFlat(m, l)) return false;
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (l.contains(xs[i]) || !isCocircuit(m, l.without(ys[i]).with(xs[i]))) return false;
  return isVerticallyContractibleSet(m, n, l);
}

/// Caramboles whose filament is a whole nontrivial line, in line order.
inline std::vector<Carambole> findCaramboles(const Matroid& m, const Matroid& n) {
  std::vector<Carambole> out;
  for (ElementSet line : nontrivialLines(m)) {
    std::vector<ElementId> ys = line.toVector();
    auto xs = caramboleHull(m, ys);
    if (!xs) continue;
    Carambole k = certifyCarambole(m, n, *xs, ys);
    if (k.directCertified) out.push_back(k);
  }
  return out;
}

/// Filaments of N-caramboles of M (every nontrivial line that certifies).
inline std::vector<ElementSet> findFilaments(const Matroid& m, const Matroid& n) {
  std::vector<ElementSet> out;
  for (const Carambole& k : findCaramboles(m, n)) out.push_back(k.filament());
  return out;
}

inline bool isFilament(const Matroid& m, const Matroid& n, ElementSet l) {
  if (l.size() < 3 || m.rank(l) != 2 || !isFlat(m, l)) return false;
  auto xs = caramboleHull(m, l.toVector());
  return xs && isVerticallyContractibleSet(m, n, l);
}

/// All N-biwebs, normalized with y1 < y2. Triads and triangles may be passed in
/// when the caller has them already.
inline std::vector<Biweb> findBiwebs(const Matroid& m, const Matroid& n, const std::vector<ElementSet>* triList = nullptr,
                                     const std::vector<ElementSet>* triadList = nullptr) {
  std::vector<ElementSet> tris = triList ? *triList : triangles(m);
  std::vector<ElementSet> tds = triadList ? *triadList : triads(m);
  auto triadWith = [&](ElementSet pair, ElementSet avoid) {
    std::vector<ElementId> out;
    for (ElementSet t : tds)
      if (t.containsAll(pair) && !(t - pair).intersects(avoid)) out.push_back((t - pair).first());
    return out;
  };
  std::vector<Biweb> out;
  for (ElementSet t : tris) {
    bool vc = false, checked = false;
    for (ElementId y3 : t) {
      ElementSet rest = t.without(y3);
      ElementId y1 = rest.first(), y2 = rest.last();
      // x1 with {y2,y3}; x2 with {y1,y3}.
      std::vector<ElementId> x1s = triadWith(ElementSet{y2, y3}, t);
      if (x1s.empty()) continue;
      std::vector<ElementId> x2s = triadWith(ElementSet{y1, y3}, t);
      if (x2s.empty()) continue;
      if (!checked) {
        vc = isVerticallyContractibleSet(m, n, t);
        checked = true;
      }
      if (!vc) break;
      bool strict = triadWith(ElementSet{y1, y2}, t).empty();
      for (ElementId x1 : x1s) {
        for (ElementId x2 : x2s) {
          if (x1 == x2) continue;
          Biweb b{x1, x2, y1, y2, y3, strict};
          out.push_back(b);
        }
      }
    }
  }
  return out;
}

inline bool isBiweb(const Matroid& m, const Matroid& n, const Biweb& b) {
  ElementSet t = b.triangle();
  if (t.size() != 3 || !isCircuit(m, t)) return false;
  if (!isCocircuit(m, ElementSet{b.x1, b.y2, b.y3}) || !isCocircuit(m, ElementSet{b.x2, b.y1, b.y3})) return false;
  if (b.elements().size() != 5) return false;
  return isVerticallyContractibleSet(m, n, t);
}

/// Triweb x1,x2,x3,y1,y2,y3: {y} an N-contractible triangle and {x_i, y_j, y_k} triads.
inline std::vector<Triweb> findTriwebs(const Matroid& m, const Matroid& n) {
  std::vector<Triweb> out;
  std::vector<ElementSet> tds = triads(m);
  for (ElementSet t : triangles(m)) {
    std::vector<ElementId> ys = t.toVector();
    std::vector<ElementId> xs;
    for (ElementId y : ys) {
      ElementSet pair = t.without(y);
      ElementId found = -1;
      for (ElementSet d : tds)
        if (d.containsAll(pair) && !d.contains(y)) {
          found = (d - pair).first();
          break;
        }
      if (found < 0) break;
      xs.push_back(found);
    }
    if (xs.size() != 3) continue;
    if (!isNContractibleSet(m, n, t)) continue;
    Triweb w = certifyCarambole(m, n, xs, ys);
    w.triweb = true;
    out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Circuits across a carambole

/// C − L, certified to be a circuit of M/L.
inline ElementSet circuitTransfer(const Matroid& m, const Carambole& k, ElementSet c) {
  ElementSet l = k.filament();
  if (l.containsAll(c)) throw DomainError("circuit inside the filament has no transfer");
  if (!isCircuit(m, c)) throw DomainError("not a circuit: " + c.toString());
  ElementSet d = c - l;
  if (!isCircuit(m.contract(l), d)) throw DomainError("transfer " + d.toString() + " is not a circuit of M/L");
  return d;
}

/// Which alternative an expanded circuit C' = D ∪ A realizes.
enum class ExpandCase { Disjoint, AllOfHull, AllButOne };

struct ExpandedCircuit {
  ElementSet circuit;
  ExpandCase how = ExpandCase::Disjoint;
};

/// Every circuit C' of M with C' − L = D. Meeting a carambole forces
/// |C' ∩ L| ≤ 2, so candidates D ∪ A with |A| ≤ 2 are checked by rank.
inline std::vector<ExpandedCircuit> expandCircuit(const Matroid& m, const Carambole& k, ElementSet d) {
  ElementSet l = k.filament(), x = k.hull();
  if (!isCircuit(m.contract(l), d)) throw DomainError("not a circuit of M/L: " + d.toString());
  std::vector<ExpandedCircuit> out;
  for (int size = 0; size <= 2; ++size) {
    forEachSubsetOfSize(l, size, [&](ElementSet a) {
      ElementSet cand = d | a;
      if (!isCircuit(m, cand)) return true;
      ExpandedCircuit e;
      e.circuit = cand;
      if (!cand.intersects(l | x)) e.how = ExpandCase::Disjoint;
      else if (cand.containsAll(x)) e.how = ExpandCase::AllOfHull;
      else e.how = ExpandCase::AllButOne;
      out.push_back(e);
      return true;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Θ_n, modular flats, generalized parallel connection

inline bool isModularFlat(const Matroid& m, ElementSet f) {
  if (!isFlat(m, f)) return false;
  int rf = m.rank(f);
  for (int r = 0; r <= m.rank(); ++r) {
    for (ElementSet g : flatsOfRank(m, r)) {
      if (rf + r != m.rank(f | g) + m.rank(f & g)) return false;
    }
  }
  return true;
}

/// Θ_n over GF(101): y_i = e_i, and x_i = w_i·u − u_i·w with u = (1,...,1),
/// w = (1,2,...,n), so x_i has coordinate j equal to i − j. Then X spans a
/// line, L is a basis, and (L − y_i) ∪ x_i are circuits. The defining
/// properties are re-checked on the dual before returning.
inline Matroid theta(int n, const std::vector<ElementId>& xs, const std::vector<ElementId>& ys) {
  if (n < 3) throw DomainError("theta needs n >= 3");
  if (static_cast<int>(xs.size()) != n || static_cast<int>(ys.size()) != n) throw DomainError("theta needs n labels per side");
  constexpr int p = 101;
  if (n >= p) throw DomainError("theta limited to n < 101");
  ElementSet ground = ElementSet::of(xs) | ElementSet::of(ys);
  if (ground.size() != 2 * n) throw DomainError("theta labels must be distinct");
  std::vector<std::vector<std::uint32_t>> cols(kMaxElements, std::vector<std::uint32_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    cols[ys[i]][i] = 1;
    for (int j = 0; j < n; ++j) cols[xs[i]][j] = static_cast<std::uint32_t>(((i - j) % p + p) % p);
  }
  Matroid t = linearMatroid(p, n, ground, cols, Backend::Theta);
  Matroid d = t.dual();
  ElementSet l = ElementSet::of(ys), x = ElementSet::of(xs);
  if (d.rank(l) != 2 || !isFlat(d, l)) throw DomainError("theta: L is not a line of the dual");
  if (t.rank(x) != 2 || !isFlat(t, x)) throw DomainError("theta: X is not a coline of the dual");
  for (int i = 0; i < n; ++i)
    if (!isCocircuit(d, l.without(ys[i]).with(xs[i]))) throw DomainError("theta: missing cocircuit of the dual");
  return t;
}

inline Matroid theta(int n) {
  std::vector<ElementId> xs, ys;
  for (int i = 0; i < n; ++i) xs.push_back(i), ys.push_back(n + i);
  return theta(n, xs, ys);
}

/// M with M* = P_X(H*, Θ_n), where Θ_n lives on xs ∪ ys. Checks the
/// hypotheses, modularity of X in Θ_n, that M/L = H, and that the result has
/// the carambole x_1..x_n, y_1..y_n.
inline Matroid reconstruct(const Matroid& h, const std::vector<ElementId>& xs, const std::vector<ElementId>& ys) {
  int n = static_cast<int>(xs.size());
  ElementSet x = ElementSet::of(xs), l = ElementSet::of(ys);
  if (n < 3 || x.size() != n || l.size() != n || static_cast<int>(ys.size()) != n) throw DomainError("reconstruct needs n >= 3 distinct x and y labels");
  if (!h.ground().containsAll(x)) throw DomainError("X is not contained in E(H)");
  if (h.ground().intersects(l)) throw DomainError("filament labels must be fresh");
  if (h.corank(x) != 2) throw DomainError("X does not have corank 2 in H (corank " + std::to_string(h.corank(x)) + ")");
  if (!isCosimple(h)) throw DomainError("H is not cosimple");
  Matroid th = theta(n, xs, ys);
  if (!isModularFlat(th, x)) throw DomainError("X is not a modular flat of theta");
  Matroid hd = h.dual();
  if (!sameRankFunction(hd.restrict(x), th.restrict(x))) throw DomainError("H* and theta disagree on X");
  Matroid gpc = generalizedParallelConnection(th, hd, x);
  Matroid m = gpc.dual();
  if (m.size() <= 24) m = m.toExplicit();
  if (!sameRankFunction(m.contract(l), h.size() <= 24 ? h.toExplicit() : h)) throw DomainError("reconstruction: M/L differs from H");
  if (m.rank(l) != 2) throw DomainError("reconstruction: L is not a line");
  for (int i = 0; i < n; ++i)
    if (!isCocircuit(m, l.without(ys[i]).with(xs[i]))) throw DomainError("reconstruction: missing carambole cocircuit");
  return m;
}

}  // namespace splitter
