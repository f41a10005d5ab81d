#include <gtest/gtest.h>

#include "oracles.hpp"
#include "splitter/splitter.hpp"
#include "support.hpp"

using namespace splitter;

namespace {

Matroid mprism() { return graphicMatroid(prismGraph()); }

/// cosimplification computed from the dual, for the cyclic-deletion oracle
Matroid oracleCosimplify(const Matroid& m) { return oracle::simplify(m.dual()).dual(); }

}  // namespace

TEST(HasMinor, Examples) {
  Matroid p = mprism();
  auto self = hasMinor(p, p);
  ASSERT_TRUE(self.has_value());
  EXPECT_TRUE(verifyMinorWitness(p, p, *self));
  Matroid k5 = graphicMatroid(completeGraph(5)), k4 = graphicMatroid(completeGraph(4));
  auto w = hasMinor(k5, k4);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(verifyMinorWitness(k5, k4, *w));
  EXPECT_FALSE(hasMinor(graphicMatroid(completeBipartite(3, 3)), graphicMatroid(completeGraph(5))).has_value());
  EXPECT_TRUE(hasMinor(p, Matroid()).has_value());
  EXPECT_FALSE(hasMinor(k4, uniformMatroid(2, 4)).has_value());
}

TEST(HasMinor, GraphRouteAndGenericRouteAgree) {
  Matroid k4 = graphicMatroid(completeGraph(4));
  for (const SimpleGraph& g : generatedCorpus(6)) {
    Matroid m = graphicMatroid(g);
    EXPECT_TRUE(detail::graphRouteApplies(m, k4));
    bool viaGraph = hasMinor(m, k4).has_value();
    bool viaTable = hasMinor(m.toExplicit(), k4.toExplicit()).has_value();
    EXPECT_EQ(viaGraph, viaTable) << emitGraph6(g);
    EXPECT_TRUE(viaGraph);  // every 3-connected graph has a K4 minor
  }
  EXPECT_FALSE(detail::graphRouteApplies(graphicMatroid(completeGraph(5)), bondMatroid(completeGraph(4))));
  EXPECT_FALSE(detail::graphRouteApplies(graphicMatroid(completeGraph(5)), uniformMatroid(2, 3)));
}

TEST(HasMinor, AgreesWithOracleOnPool) {
  std::vector<Matroid> targets{uniformMatroid(2, 3), uniformMatroid(2, 4), graphicMatroid(completeGraph(4)).toExplicit()};
  int positive = 0, total = 0;
  for (const auto& [name, m] : support::randomPool(120)) {
    if (m.size() > 8) continue;
    for (const Matroid& n : targets) {
      bool got = hasMinor(m, n).has_value();
      EXPECT_EQ(got, oracle::hasMinor(m, n)) << name << " N=" << n.size();
      if (auto w = hasMinor(m, n)) EXPECT_TRUE(verifyMinorWitness(m, n, *w)) << name;
      positive += got;
      ++total;
    }
  }
  EXPECT_GT(positive, 10);
  EXPECT_GT(total - positive, 10);
}

TEST(Classification, UniformExample) {
  Matroid u = uniformMatroid(2, 4);
  for (ElementId e : u.ground()) {
    ElementClassification c = classifyElement(u, Matroid(), e);
    EXPECT_TRUE(c.nDeletable);
    EXPECT_TRUE(c.cyclicallyNDeletable);
  }
  EXPECT_THROW(classifyElement(u, Matroid(), 9), DomainError);
}

TEST(Classification, AgreesWithOracleOnPairs) {
  auto pairs = support::minorPairs(support::randomPool(200));
  int checked = 0;
  for (const auto& [name, m, n] : pairs) {
    if (m.size() > 8) continue;
    for (ElementId e : m.ground()) {
      ElementClassification c = classifyElement(m, n, e);
      Matroid del = m.deleteElement(e), con = m.contract(e);
      EXPECT_EQ(c.nDeletable, oracle::threeConnectedWithMinor(del, n)) << name << " " << e;
      EXPECT_EQ(c.nContractible, oracle::threeConnectedWithMinor(con, n)) << name << " " << e;
      EXPECT_EQ(c.verticallyNContractible, oracle::verticallyContractible(m, n, ElementSet::single(e))) << name << " " << e;
      EXPECT_EQ(c.cyclicallyNDeletable, oracle::threeConnectedWithMinor(oracleCosimplify(del), n)) << name << " " << e;
      EXPECT_EQ(isVerticallyContractibleSet(m, n, ElementSet::single(e)), c.verticallyNContractible);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Classification, DualityOnCorpus) {
  for (const auto& [name, m] : support::corpusPool(6)) {
    if (m.size() > 10) continue;
    for (const Matroid& n : {Matroid(), uniformMatroid(2, 3)}) {
      if (n.size() && !hasMinor(m, n)) continue;
      Matroid md = m.dual(), nd = n.dual();
      for (ElementId e : m.ground()) {
        EXPECT_EQ(classifyElement(m, n, e).nDeletable, classifyElement(md, nd, e).nContractible) << name << " " << e;
        EXPECT_EQ(classifyElement(m, n, e).cyclicallyNDeletable, classifyElement(md, nd, e).verticallyNContractible)
            << name << " " << e;
      }
    }
  }
}

TEST(VerticalContractibility, WuCount) {
  Matroid m = bondMatroid(k3nTriplePrime(4));
  EXPECT_EQ(verticallyContractibleElements(m, Matroid()).size(), 3);
}

TEST(VerticalContractibility, WheelRim) {
  Matroid w = wheelMatroid(5);
  auto rim = wheelOrWhirlRim(w);
  ASSERT_TRUE(rim.has_value());
  EXPECT_EQ(rim->size(), 5);
  ElementSet vc = verticallyContractibleElements(w, Matroid());
  EXPECT_TRUE(vc.containsAll(*rim));
}

TEST(VerticalContractibility, PrismTriangleAndErrors) {
  Matroid p = mprism();
  EXPECT_TRUE(isVerticallyContractibleSet(p, Matroid(), ElementSet{0, 1, 2}));
  EXPECT_TRUE(isNContractibleSet(p, Matroid(), ElementSet{0, 1, 2}));
  EXPECT_THROW(isVerticallyContractibleSet(p, Matroid(), ElementSet{}), DomainError);
}

TEST(VerticalContractibility, FilamentsAreContractible) {
  int filaments = 0;
  for (const auto& [name, m, n] : support::minorPairs(support::corpusPool(6))) {
    for (ElementSet l : findFilaments(m, n)) {
      EXPECT_TRUE(isVerticallyContractibleSet(m, n, l)) << name << " " << l.toString();
      ++filaments;
    }
  }
  EXPECT_GT(filaments, 0);
}

TEST(Replaceability, Examples) {
  Matroid p = mprism();
  ElementSet vc = verticallyContractibleElements(p, Matroid());
  ASSERT_FALSE(vc.empty());
  ElementId q = vc.first();
  ElementSet s;
  for (ElementId e : p.ground())
    if (e != q && p.rank(s.with(e).with(q)) == s.size() + 2 && s.size() < 2) s.insert(e);
  Replacement r = isReplaceable(p, Matroid(), q, s);
  EXPECT_TRUE(r.replaceable);
  EXPECT_EQ(r.spanning, ElementSet::single(q));
  EXPECT_THROW(isReplaceable(p, Matroid(), q, s.with(q)), DomainError);
}

TEST(Replaceability, NegativeInstanceMatchesClosure) {
  // search an 8-element instance whose contractible elements all lie in cl(S)
  int negatives = 0;
  for (const auto& [name, m, n] : support::minorPairs(support::randomPool(200))) {
    if (m.size() != 8) continue;
    ElementSet vc = verticallyContractibleElements(m, n);
    for (ElementSet s : oracle::subsets(m.ground())) {
      ElementSet cl = oracle::closure(m, s);
      for (ElementId p : m.ground() - cl) {
        bool expect = oracle::closure(m, s | (vc - s)).contains(p);
        Replacement r = isReplaceable(m, n, p, s);
        ASSERT_EQ(r.replaceable, expect) << name;
        if (r.replaceable) {
          EXPECT_TRUE(vc.containsAll(r.spanning));
          EXPECT_TRUE(oracle::closure(m, s | r.spanning).contains(p));
        } else if (cl.containsAll(vc)) {
          ++negatives;
        }
      }
    }
    if (negatives > 0) break;
  }
  EXPECT_GT(negatives, 0);
}

TEST(Replaceability, VertbarrierColoops) {
  int seen = 0;
  for (const auto& [name, m, n] : support::minorPairs(support::corpusPool(6))) {
    if (m.rank() < 4) continue;
    for (const Vertbarrier& b : findVertbarriers(m, n)) {
      if (b.connected) continue;
      ++seen;
      EXPECT_TRUE(isVerticallyContractibleSet(m, n, ElementSet::single(b.coloop))) << name;
      EXPECT_TRUE(isReplaceable(m, n, b.coloop, {}).replaceable) << name;
    }
  }
  SUCCEED() << seen << " disconnected vertbarriers";
}
