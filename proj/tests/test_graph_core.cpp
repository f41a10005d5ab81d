#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "oracles.hpp"
#include "splitter/splitter.hpp"

using namespace splitter;

namespace {

/// Every 3-connected simple graph on exactly n vertices, deduplicated by the
/// brute-force canonical form.
std::set<std::vector<std::uint8_t>> bruteCorpus(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::set<std::vector<std::uint8_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    if (std::popcount(mask) < 3 * n / 2) continue;
    SimpleGraph g(n);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1u) g.addEdge(slots[i].first, slots[i].second);
    if (oracle::graph3Connected(g)) out.insert(oracle::canonical(n, g.edges));
  }
  return out;
}

std::vector<std::uint8_t> key(const SimpleGraph& g) { return oracle::canonical(g.vertexCount, g.edges); }

}  // namespace

TEST(Graph6, ParseExamples) {
  SimpleGraph one = parseGraph6("@");
  EXPECT_EQ(one.vertexCount, 1);
  EXPECT_EQ(one.edgeCount(), 0);
  SimpleGraph k4 = parseGraph6("C~");
  EXPECT_EQ(k4.vertexCount, 4);
  EXPECT_EQ(k4.edgeCount(), 6);
  EXPECT_TRUE(graphsIsomorphic(k4, completeGraph(4)));
}

TEST(Graph6, RoundTrips) {
  SimpleGraph p = prismGraph();
  SimpleGraph back = parseGraph6(emitGraph6(p));
  EXPECT_TRUE(graphsIsomorphic(back, p));
  EXPECT_EQ(back.edges.size(), p.edges.size());
  for (const SimpleGraph& g : generatedCorpus(6)) {
    std::string s = emitGraph6(g);
    EXPECT_EQ(emitGraph6(parseGraph6(s)), s);
  }
  EXPECT_EQ(emitGraph6(completeGraph(4)), "C~");
}

TEST(Graph6, ErrorsCarryOffset) {
  try {
    parseGraph6("D");
    FAIL() << "truncated input accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
  try {
    parseGraph6("C\x01");
    FAIL() << "malformed byte accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
  EXPECT_THROW(parseGraph6(""), ParseError);
}

TEST(ThreeConnectivity, Examples) {
  EXPECT_TRUE(isThreeConnectedGraph(completeGraph(4)));
  EXPECT_FALSE(isThreeConnectedGraph(pathGraph(4)));
  EXPECT_TRUE(isThreeConnectedGraph(prismGraph()));
  EXPECT_FALSE(isThreeConnectedGraph(cycleGraph(5)));
  EXPECT_TRUE(isThreeConnectedGraph(wheelGraph(5)));
}

TEST(ThreeConnectivity, AgreesWithOracleOnAllSixVertexGraphs) {
  int checked = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 15); mask += 7) {
    SimpleGraph g(6);
    int i = 0;
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v, ++i)
        if ((mask >> i) & 1u) g.addEdge(u, v);
    ASSERT_EQ(isThreeConnectedGraph(g), oracle::graph3Connected(g)) << emitGraph6(g);
    ++checked;
  }
  EXPECT_GT(checked, 4000);
}

TEST(NamedGraphs, Examples) {
  SimpleGraph k = k3nTriplePrime(4);
  EXPECT_EQ(k.edgeCount(), 15);
  auto deg = k.degrees();
  for (int v = 0; v < 3; ++v) EXPECT_EQ(deg[v], 6);
  for (int v = 3; v < 7; ++v) EXPECT_EQ(deg[v], 3);
  SimpleGraph w = wheelGraph(4);
  EXPECT_EQ(w.edgeCount(), 8);
  EXPECT_EQ(w.degrees()[0], 4);
  SimpleGraph p = prismGraph();
  EXPECT_EQ(p.edgeCount(), 9);
  for (int d : p.degrees()) EXPECT_EQ(d, 3);
  EXPECT_THROW(wheelGraph(2), DomainError);
  EXPECT_TRUE(graphsIsomorphic(*graphByName("K3,3"), completeBipartite(3, 3)));
  EXPECT_TRUE(graphsIsomorphic(*graphByName("K3,4'''"), k3nTriplePrime(4)));
  EXPECT_TRUE(graphsIsomorphic(namedGraph(GraphFamily::Wheel, 5), wheelGraph(5)));
  EXPECT_FALSE(graphByName("not-a-graph").has_value());
}

TEST(Sharpness, Counts) {
  SharpInstance s = sharpnessInstance(4, 4);
  EXPECT_EQ(s.G.vertexCount, 12);
  EXPECT_EQ(s.G.edgeCount(), 31);
  EXPECT_EQ(s.k, 11);
  EXPECT_EQ(familyTarget(s.k), 7);
  EXPECT_EQ(s.Xi.size(), 4u);
  EXPECT_EQ(s.triangleU.size(), 3);
  Matroid m = bondMatroid(s.G), n = bondMatroid(s.H);
  EXPECT_EQ(m.rank() - n.rank(), 11);
  EXPECT_TRUE(isThreeConnectedGraph(s.G));
  EXPECT_THROW(sharpnessInstance(3, 4), DomainError);
  EXPECT_THROW(sharpnessInstance(4, 3), DomainError);
}

TEST(GraphicMatroids, Examples) {
  EXPECT_EQ(graphicMatroid(completeGraph(4)).rank(), 3);
  EXPECT_EQ(bondMatroid(k3nTriplePrime(4)).rank(), 9);
  // circuits of the bond matroid are the minimal edge cuts
  SimpleGraph p = prismGraph();
  Matroid b = bondMatroid(p);
  std::set<std::uint64_t> cuts;
  for (int mask = 1; mask < (1 << 6) - 1; ++mask) {
    ElementSet cut;
    for (int e = 0; e < p.edgeCount(); ++e) {
      auto [u, v] = p.edges[e];
      if (((mask >> u) & 1) != ((mask >> v) & 1)) cut.insert(e);
    }
    cuts.insert(cut.bits());
  }
  std::set<std::uint64_t> minimal, circ;
  for (std::uint64_t c : cuts) {
    bool isMin = true;
    for (std::uint64_t d : cuts)
      if (d != c && (d & ~c) == 0) isMin = false;
    if (isMin) minimal.insert(c);
  }
  for (ElementSet c : circuits(b).members) circ.insert(c.bits());
  EXPECT_EQ(circ, minimal);
}

TEST(Minors, Examples) {
  auto w = graphHasMinor(completeGraph(5), completeGraph(4));
  ASSERT_TRUE(w.has_value());
  auto pk = graphHasMinor(prismGraph(), completeGraph(4));
  ASSERT_TRUE(pk.has_value());
  // two edges of one triangle contracted, the third (now a loop) deleted
  EXPECT_EQ(pk->contractedEdges.size(), 2);
  EXPECT_EQ(pk->deletedEdges.size(), 1);
  ElementSet used = pk->contractedEdges | pk->deletedEdges;
  EXPECT_TRUE(used == (ElementSet{0, 1, 2}) || used == (ElementSet{3, 4, 5})) << used.toString();
  EXPECT_FALSE(graphHasMinor(completeBipartite(3, 3), completeGraph(5)).has_value());
  EXPECT_FALSE(graphHasMinor(prismGraph(), completeBipartite(3, 3)).has_value());
  EXPECT_FALSE(graphHasMinor(completeGraph(4), prismGraph()).has_value());
}

TEST(Minors, WitnessReproducesTarget) {
  SimpleGraph g = prismGraph(), h = completeGraph(4);
  auto w = graphHasMinor(g, h);
  ASSERT_TRUE(w.has_value());
  Matroid m = graphicMatroid(g).minor(w->contractedEdges, w->deletedEdges);
  EXPECT_TRUE(isIsomorphic(simplify(m).matroid, graphicMatroid(h)).has_value());
}

TEST(Minors, AgreeWithClosureOracleOnCorpus) {
  std::vector<SimpleGraph> corpus = generatedCorpus(6);
  int pairs = 0, positive = 0;
  for (const SimpleGraph& g : corpus) {
    auto closure = oracle::minorClosure(g, 4);
    for (const SimpleGraph& h : corpus) {
      bool expect = closure.count(key(h)) > 0;
      ASSERT_EQ(graphHasMinor(g, h).has_value(), expect) << emitGraph6(g) << " > " << emitGraph6(h);
      ++pairs;
      positive += expect;
    }
  }
  EXPECT_GT(pairs, 30);
  EXPECT_GT(positive, 15);
}

TEST(Canonical, InvariantUnderRelabeling) {
  SimpleGraph p = prismGraph();
  std::vector<int> perm{5, 3, 1, 0, 2, 4};
  SimpleGraph q(6);
  for (auto [u, v] : p.edges) q.addEdge(perm[u], perm[v]);
  EXPECT_EQ(emitGraph6(canonicalForm(p)), emitGraph6(canonicalForm(q)));
  EXPECT_FALSE(graphsIsomorphic(prismGraph(), completeBipartite(3, 3)));
}

TEST(Corpus, FourAndFiveVertices) {
  auto c4 = generatedCorpus(4);
  ASSERT_EQ(c4.size(), 1u);
  EXPECT_TRUE(graphsIsomorphic(c4[0], completeGraph(4)));
  auto c5 = generatedCorpus(5);
  EXPECT_EQ(c5.size(), 1 + bruteCorpus(5).size());
}

TEST(Corpus, SixVerticesMatchesBruteForce) {
  auto c6 = generatedCorpus(6);
  std::set<std::vector<std::uint8_t>> got;
  for (const SimpleGraph& g : c6) {
    EXPECT_TRUE(oracle::graph3Connected(g));
    got.insert(key(g));
  }
  EXPECT_EQ(got.size(), c6.size());
  std::set<std::vector<std::uint8_t>> want;
  for (int n = 4; n <= 6; ++n)
    for (const auto& k : bruteCorpus(n)) want.insert(k);
  EXPECT_EQ(got, want);
  for (const SimpleGraph& named : {prismGraph(), octahedronGraph(), wheelGraph(5), completeBipartite(3, 3)})
    EXPECT_TRUE(got.count(key(named))) << emitGraph6(named);
}

TEST(Corpus, FileSourceFilters) {
  auto path = std::filesystem::temp_directory_path() / "splitter_corpus_test.g6";
  {
    std::ofstream out(path);
    out << emitGraph6(completeGraph(4)) << "\n"
        << emitGraph6(pathGraph(5)) << "\n"
        << emitGraph6(prismGraph()) << "\n"
        << emitGraph6(completeGraph(7)) << "\n";
  }
  auto all = fileCorpus(path.string());
  EXPECT_EQ(all.size(), 3u);
  auto capped = fileCorpus(path.string(), 6);
  EXPECT_EQ(capped.size(), 2u);
  std::filesystem::remove(path);
}
