#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "splitter/splitter.hpp"
#include "support.hpp"

using namespace splitter;

namespace {

Matroid mk4() { return graphicMatroid(completeGraph(4)); }
Matroid mprism() { return graphicMatroid(prismGraph()); }
const ElementSet kPrismTriangle{0, 1, 2};

}  // namespace

TEST(ElementSet, BasicOperations) {
  ElementSet s{1, 4, 7};
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(s.first(), 1);
  EXPECT_EQ(s.last(), 7);
  EXPECT_TRUE(s.with(2).containsAll(s));
  EXPECT_FALSE(s.without(4).contains(4));
  EXPECT_EQ(ElementSet::range(3), (ElementSet{0, 1, 2}));
  EXPECT_EQ(s.toVector(), (std::vector<ElementId>{1, 4, 7}));
  EXPECT_TRUE(lexLess(ElementSet{0, 5}, ElementSet{1, 2}));
}

TEST(ElementSet, SubsetEnumerationCounts) {
  int count = 0;
  forEachSubsetOfSize(ElementSet::range(7), 3, [&](ElementSet) {
    ++count;
    return true;
  });
  EXPECT_EQ(count, 35);
  count = 0;
  forEachSubset(ElementSet{2, 5, 9}, [&](ElementSet) { ++count; });
  EXPECT_EQ(count, 8);
}

TEST(Rank, Examples) {
  EXPECT_EQ(uniformMatroid(2, 4).rank(ElementSet{}), 0);
  EXPECT_EQ(mk4().rank(mk4().ground()), 3);
  SimpleGraph wu = k3nTriplePrime(4);
  Matroid m = bondMatroid(wu);
  EXPECT_EQ(m.rank(), wu.edgeCount() - wu.vertexCount + 1);
  EXPECT_EQ(m.rank(), 9);
}

TEST(Rank, AxiomsOnRandomPool) {
  for (const auto& [name, m] : support::randomPool(40)) {
    for (ElementSet a : oracle::subsets(m.ground())) {
      ASSERT_LE(m.rank(a), a.size()) << name;
      for (ElementId e : m.ground() - a) {
        int d = m.rank(a.with(e)) - m.rank(a);
        ASSERT_TRUE(d == 0 || d == 1) << name;
      }
    }
  }
}

TEST(Dual, UniformAndK4SelfDual) {
  Matroid u24 = uniformMatroid(2, 4);
  EXPECT_TRUE(oracle::isomorphic(u24.dual(), u24));
  EXPECT_TRUE(isIsomorphic(u24.dual(), u24).has_value());
  EXPECT_TRUE(oracle::isomorphic(mk4().dual(), mk4()));
  EXPECT_TRUE(isIsomorphic(mk4().dual(), mk4()).has_value());
  EXPECT_TRUE(sameRankFunction(mk4().dual().dual(), mk4()));
}

TEST(Minor, IdentityAndPrismTriangle) {
  Matroid p = mprism();
  EXPECT_TRUE(sameRankFunction(p.minor({}, {}), p));
  Matroid c = p.minor(kPrismTriangle, {});
  EXPECT_EQ(c.size(), 6);
  EXPECT_TRUE(oracle::isomorphic(c, mk4()));
  EXPECT_TRUE(isIsomorphic(c, mk4()).has_value());
  EXPECT_THROW(p.minor(ElementSet{0, 1}, ElementSet{1}), DomainError);
}

TEST(Minor, CommutesWithDuality) {
  std::mt19937 rng(7);
  for (const auto& [name, m] : support::randomPool(60)) {
    std::vector<ElementId> el = m.ground().toVector();
    std::shuffle(el.begin(), el.end(), rng);
    ElementSet c, d;
    for (std::size_t i = 0; i < el.size(); ++i) {
      if (i % 4 == 0) c.insert(el[i]);
      if (i % 4 == 1) d.insert(el[i]);
    }
    EXPECT_TRUE(sameRankFunction(m.minor(c, d).dual(), m.dual().minor(d, c))) << name;
  }
}

TEST(Simplify, Examples) {
  Matroid s = simplify(uniformMatroid(1, 3)).matroid;
  EXPECT_EQ(s.size(), 1);
  EXPECT_EQ(s.rank(), 1);
  Matroid k4e = simplify(mk4().contract(0)).matroid;
  EXPECT_TRUE(oracle::isomorphic(k4e, uniformMatroid(2, 3)));
}

TEST(Simplify, AgreesWithOracleAndCosimplifyIsDual) {
  for (const auto& [name, m] : support::randomPool(100)) {
    Matroid s = simplify(m).matroid;
    EXPECT_EQ(s.ground(), oracle::simpleRepresentatives(m)) << name;
    Matroid co = cosimplify(m).matroid;
    Matroid viaDual = simplify(m.dual()).matroid.dual();
    EXPECT_EQ(co.size(), viaDual.size()) << name;
    EXPECT_TRUE(oracle::isomorphic(co, viaDual)) << name;
  }
}

TEST(Cycles, UniformAndK4) {
  auto c = circuits(uniformMatroid(2, 4)).members;
  ASSERT_EQ(c.size(), 4u);
  for (ElementSet s : c) EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(circuits(mk4()).members.size(), 7u);
  EXPECT_EQ(cocircuits(mk4()).members.size(), 7u);
  int triangles = 0;
  for (ElementSet s : circuits(mk4()).members) triangles += s.size() == 3;
  EXPECT_EQ(triangles, 4);
}

TEST(Cycles, AgreeWithOracleOnPool) {
  for (const auto& [name, m] : support::randomPool(60)) {
    EXPECT_EQ(circuits(m).members, oracle::circuits(m)) << name;
    EXPECT_EQ(cocircuits(m).members, oracle::cocircuits(m)) << name;
  }
}

TEST(Cycles, SizeCap) {
  for (ElementSet s : circuits(mprism(), 3).members) EXPECT_LE(s.size(), 3);
  EXPECT_EQ(circuits(mprism(), 3).members.size(), 2u);
}

TEST(Span, Examples) {
  Matroid p = mprism();
  EXPECT_EQ(span(p, {}), ElementSet{});
  // star at vertex 0: edges 01, 02, 03 -> 12 is spanned
  EXPECT_TRUE(span(p, ElementSet{0, 2, 6}).contains(1));
  Matroid u = uniformMatroid(2, 4);
  forEachSubsetOfSize(u.ground(), 2, [&](ElementSet s) {
    EXPECT_EQ(span(u, s), u.ground());
    return true;
  });
  for (const auto& [name, m] : support::randomPool(30))
    for (ElementSet s : oracle::subsets(m.ground())) ASSERT_EQ(span(m, s), oracle::closure(m, s)) << name;
}

TEST(Span, DualSideIsCoclosure) {
  Matroid p = mprism();
  for (ElementSet s : oracle::subsets(p.ground())) ASSERT_EQ(span(p, s, Side::Dual), span(p.dual(), s));
}

TEST(Connectivity, Examples) {
  EXPECT_TRUE(isTutte3Connected(uniformMatroid(2, 4)));
  EXPECT_TRUE(isTutte3Connected(mprism()));
  EXPECT_TRUE(oracle::tutte3Connected(mprism()));
  Matroid k4e = mk4().contract(0);
  EXPECT_TRUE(isVerticallyKConnected(k4e, 3));
  EXPECT_FALSE(isTutte3Connected(k4e));
}

TEST(Connectivity, AgreesWithOracleOnPool) {
  for (const auto& [name, m] : support::randomPool(120)) {
    EXPECT_EQ(isTutte3Connected(m), oracle::tutte3Connected(m)) << name;
    EXPECT_EQ(isVerticallyKConnected(m, 3), oracle::vertically3Connected(m)) << name;
    EXPECT_EQ(isVerticallyKConnectedExhaustive(m, 3), oracle::vertically3Connected(m)) << name;
    for (ElementSet a : oracle::subsets(m.ground())) ASSERT_EQ(lambda(m, a), oracle::lambda(m, a)) << name;
  }
}

TEST(Connectivity, Components) {
  Matroid u = uniformMatroid(1, 2);
  EXPECT_TRUE(isConnected(u));
  Matroid two = generalizedParallelConnection(uniformMatroid(1, 1, 0), uniformMatroid(1, 1, 1), {});
  EXPECT_EQ(components(two).size(), 2u);
  EXPECT_FALSE(isConnected(two));
  EXPECT_EQ(coloops(two), (ElementSet{0, 1}));
  EXPECT_EQ(loops(uniformMatroid(0, 2)), (ElementSet{0, 1}));
}

TEST(Isomorphism, Examples) {
  Matroid p = mprism();
  ElementMap perm{};
  for (int i = 0; i < kMaxElements; ++i) perm[i] = i;
  std::vector<ElementId> shuffled{4, 7, 1, 8, 0, 3, 6, 2, 5};
  for (int i = 0; i < 9; ++i) perm[i] = shuffled[i];
  Matroid q = relabel(p, perm);
  auto found = isIsomorphic(p, q);
  ASSERT_TRUE(found.has_value());
  EXPECT_TRUE(verifyIsomorphism(p, q, *found));
  EXPECT_TRUE(isIsomorphic(uniformMatroid(2, 4), uniformMatroid(2, 4).dual()).has_value());
  EXPECT_FALSE(isIsomorphic(mk4(), uniformMatroid(3, 6)).has_value());
  EXPECT_FALSE(isIsomorphic(mprism(), graphicMatroid(completeBipartite(3, 3))).has_value());
}

TEST(Isomorphism, AgreesWithOracleOnPool) {
  auto pool = support::randomPool(90);
  int compared = 0;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const Matroid &a = pool[i].m, &b = pool[j].m;
      if (a.size() != b.size() || a.rank() != b.rank() || a.size() > 7) continue;
      ++compared;
      EXPECT_EQ(isIsomorphic(a, b).has_value(), oracle::isomorphic(a, b)) << pool[i].name << " " << pool[j].name;
    }
  EXPECT_GT(compared, 20);
}

TEST(ExplicitFormat, RoundTrip) {
  for (const auto& [name, m] : support::randomPool(20)) {
    std::stringstream ss;
    writeExplicit(ss, m);
    Matroid back = readExplicit(ss);
    EXPECT_TRUE(sameRankFunction(back, m)) << name;
  }
}

TEST(Constructors, FromBasesAndLinear) {
  std::vector<ElementSet> bases;
  forEachSubsetOfSize(ElementSet::range(4), 2, [&](ElementSet b) {
    bases.push_back(b);
    return true;
  });
  EXPECT_TRUE(sameRankFunction(matroidFromBases(ElementSet::range(4), bases), uniformMatroid(2, 4)));
  // Fano plane over GF(2): columns 1..7 in binary
  std::vector<std::vector<std::uint32_t>> cols(kMaxElements, std::vector<std::uint32_t>(3, 0));
  for (int v = 1; v <= 7; ++v)
    for (int b = 0; b < 3; ++b) cols[v - 1][b] = (v >> b) & 1u;
  Matroid fano = linearMatroid(2, 3, ElementSet::range(7), cols);
  EXPECT_EQ(fano.rank(), 3);
  EXPECT_EQ(triangles(fano).size(), 7u);
  EXPECT_TRUE(isTutte3Connected(fano));
}

TEST(Constructors, CographicIsDualOfGraphic) {
  for (const SimpleGraph& g : generatedCorpus(6)) {
    Matroid b = bondMatroid(g);
    EXPECT_TRUE(sameRankFunction(b, graphicMatroid(g).dual())) << emitGraph6(g);
  }
}

TEST(Errors, UnknownElementIsDomainError) {
  EXPECT_THROW(mk4().rank(ElementSet{10}), DomainError);
  EXPECT_THROW(mk4().contract(20), DomainError);
}
