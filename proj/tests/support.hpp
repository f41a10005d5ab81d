#pragma once

#include <random>
#include <string>
#include <vector>

#include "splitter/splitter.hpp"

namespace support {

using namespace splitter;

struct NamedMatroid {
  std::string name;
  Matroid m;
};

struct NamedPair {
  std::string name;
  Matroid m;
  Matroid n;
};

/// Column matroid of a random rows x cols matrix over GF(prime), labels 0..cols-1.
inline Matroid randomLinear(std::mt19937& rng, int prime, int rows, int cols) {
  std::uniform_int_distribution<int> entry(0, prime - 1);
  std::vector<std::vector<std::uint32_t>> columns(kMaxElements, std::vector<std::uint32_t>(rows, 0));
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) columns[j][i] = static_cast<std::uint32_t>(entry(rng));
  return linearMatroid(prime, rows, ElementSet::range(cols), columns);
}

/// `count` explicit matroids with at most 9 elements, cycling through GF(2),
/// GF(3) and GF(5); ranks 2..5. Deterministic for a given seed.
inline std::vector<NamedMatroid> randomPool(int count = 200, unsigned seed = 20261016) {
  std::mt19937 rng(seed);
  const int primes[] = {2, 3, 5};
  std::vector<NamedMatroid> out;
  for (int i = 0; i < count; ++i) {
    int p = primes[i % 3];
    int rows = 2 + static_cast<int>(rng() % 4);
    int cols = std::min(9, rows + 1 + static_cast<int>(rng() % (9 - rows)));
    Matroid m = randomLinear(rng, p, rows, cols).toExplicit();
    out.push_back({"gf" + std::to_string(p) + "#" + std::to_string(i), m});
  }
  return out;
}

/// Graphic and bond matroids of corpus(6).
inline std::vector<NamedMatroid> corpusPool(int maxVertices = 6) {
  std::vector<NamedMatroid> out;
  for (const SimpleGraph& g : generatedCorpus(maxVertices)) {
    std::string g6 = emitGraph6(g);
    out.push_back({"M(" + g6 + ")", graphicMatroid(g)});
    out.push_back({"M*(" + g6 + ")", bondMatroid(g)});
  }
  return out;
}

/// Minors the lemma suites are run against, in the backend matching `m`.
inline std::vector<NamedMatroid> minorsFor(const Matroid& m) {
  std::vector<NamedMatroid> out{{"empty", Matroid()}};
  SimpleGraph k3 = completeGraph(3), k4 = completeGraph(4);
  switch (m.backend()) {
    case Backend::Graphic:
      out.push_back({"U2,3", graphicMatroid(k3)});
      out.push_back({"M(K4)", graphicMatroid(k4)});
      break;
    case Backend::Cographic:
      out.push_back({"U2,3", uniformMatroid(2, 3)});
      out.push_back({"M(K4)", bondMatroid(k4)});
      break;
    default:
      out.push_back({"U2,3", uniformMatroid(2, 3)});
      out.push_back({"M(K4)", graphicMatroid(k4).toExplicit()});
      break;
  }
  return out;
}

/// 3-connected simple instances of the pool paired with every minor they
/// contain with r(M) > r(N).
inline std::vector<NamedPair> minorPairs(const std::vector<NamedMatroid>& pool) {
  std::vector<NamedPair> out;
  for (const auto& [name, m] : pool) {
    if (m.size() < 4 || !isSimple(m) || !isTutte3Connected(m)) continue;
    for (const auto& [nname, n] : minorsFor(m)) {
      if (n.rank() >= m.rank()) continue;
      if (n.size() && !hasMinor(m, n)) continue;
      out.push_back({name + "/" + nname, m, n});
    }
  }
  return out;
}

}  // namespace support
