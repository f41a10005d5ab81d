#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "splitter/element_set.hpp"
#include "splitter/errors.hpp"
#include "splitter/multigraph.hpp"

namespace splitter {

enum class Backend { Graphic, Cographic, Linear, Uniform, Explicit, Theta, Gpc, Derived };

inline const char* backendName(Backend b) {
  switch (b) {
    case Backend::Graphic: return "graphic";
    case Backend::Cographic: return "cographic";
    case Backend::Linear: return "linear";
    case Backend::Uniform: return "uniform";
    case Backend::Explicit: return "explicit-rank-table";
    case Backend::Theta: return "theta";
    case Backend::Gpc: return "gpc-composite";
    case Backend::Derived: return "derived";
  }
  return "?";
}

class Matroid;

namespace detail {

/// Rank oracle over label masks. Implementations only ever see subsets of the
/// ground set they were built for.
class RankNode {
 public:
  virtual ~RankNode() = default;
  virtual int rank(ElementSet s) const = 0;
};

/// Maps subsets of a fixed ground set to dense table indices.
class SubsetIndexer {
 public:
  SubsetIndexer() = default;
  explicit SubsetIndexer(ElementSet ground) {
    int offset = 0;
    for (int byte = 0; byte < 8; ++byte) {
      std::uint64_t g = (ground.bits() >> (8 * byte)) & 0xff;
      for (int v = 0; v < 256; ++v) {
        std::uint32_t out = 0;
        int k = 0;
        for (int b = 0; b < 8; ++b) {
          if (!((g >> b) & 1u)) continue;
          if ((v >> b) & 1) out |= 1u << k;
          ++k;
        }
        table_[byte][v] = out << offset;
      }
      offset += std::popcount(g);
    }
  }
  std::uint32_t index(ElementSet s) const {
    std::uint64_t b = s.bits();
    std::uint32_t out = 0;
    for (int byte = 0; byte < 8 && b; ++byte, b >>= 8) out |= table_[byte][b & 0xff];
    return out;
  }

 private:
  std::array<std::array<std::uint32_t, 256>, 8> table_{};
};

class TableNode final : public RankNode {
 public:
  TableNode(ElementSet ground, std::vector<std::uint8_t> table)
      : indexer_(ground), table_(std::move(table)) {}
  int rank(ElementSet s) const override { return table_[indexer_.index(s)]; }
  const std::vector<std::uint8_t>& table() const { return table_; }

 private:
  SubsetIndexer indexer_;
  std::vector<std::uint8_t> table_;
};

/// Cycle matroid of a multigraph, or its bond matroid when `cographic`.
class GraphNode final : public RankNode {
 public:
  GraphNode(Multigraph g, bool cographic)
      : g_(std::move(g)), cographic_(cographic), total_(g_.forestRank(g_.edges)) {}
  int rank(ElementSet s) const override {
    if (!cographic_) return g_.forestRank(s);
    return s.size() + g_.forestRank(g_.edges - s) - total_;
  }
  const Multigraph& graph() const { return g_; }

 private:
  Multigraph g_;
  bool cographic_;
  int total_;
};

class UniformNode final : public RankNode {
 public:
  explicit UniformNode(int r) : r_(r) {}
  int rank(ElementSet s) const override { return std::min(s.size(), r_); }

 private:
  int r_;
};

/// Column vectors over GF(p), indexed by label.
class LinearNode final : public RankNode {
 public:
  LinearNode(int prime, int rows, std::vector<std::vector<std::uint32_t>> columns)
      : p_(prime), rows_(rows), cols_(std::move(columns)) {}

  int rank(ElementSet s) const override {
    if (p_ == 2) return rankBinary(s);
    std::vector<std::vector<std::uint32_t>> basis;  // echelon rows keyed by pivot
    std::vector<int> pivots;
    for (ElementId e : s) {
      std::vector<std::uint32_t> v = cols_[e];
      for (std::size_t i = 0; i < basis.size(); ++i) {
        std::uint32_t c = v[pivots[i]];
        if (c == 0) continue;
        for (int r = 0; r < rows_; ++r)
          v[r] = static_cast<std::uint32_t>((v[r] + static_cast<std::uint64_t>(p_ - c) * basis[i][r]) % p_);
      }
      int piv = -1;
      for (int r = 0; r < rows_; ++r)
        if (v[r] != 0) { piv = r; break; }
      if (piv < 0) continue;
      std::uint32_t inv = inverse(v[piv]);
      for (int r = 0; r < rows_; ++r) v[r] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v[r]) * inv % p_);
      basis.push_back(std::move(v));
      pivots.push_back(piv);
      if (static_cast<int>(basis.size()) == rows_) break;
    }
    return static_cast<int>(basis.size());
  }

  int prime() const { return p_; }
  int rows() const { return rows_; }
  const std::vector<std::vector<std::uint32_t>>& columns() const { return cols_; }

 private:
  int rankBinary(ElementSet s) const {
    std::array<std::uint64_t, 64> basis{};  // basis[bit] has leading bit `bit`
    int r = 0;
    for (ElementId e : s) {
      std::uint64_t v = 0;
      for (int i = 0; i < rows_; ++i)
        if (cols_[e][i] & 1u) v |= std::uint64_t{1} << i;
      while (v) {
        int top = 63 - std::countl_zero(v);
        if (!basis[top]) {
          basis[top] = v;
          ++r;
          break;
        }
        v ^= basis[top];
      }
    }
    return r;
  }
  std::uint32_t inverse(std::uint32_t a) const {
    std::uint64_t result = 1, base = a, e = static_cast<std::uint64_t>(p_ - 2);
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
  }

  int p_;
  int rows_;
  std::vector<std::vector<std::uint32_t>> cols_;
};

}  // namespace detail

/// A matroid on a subset of the label space, accessed through its rank
/// function. Values are immutable; copies share the oracle.
class Matroid {
 public:
  /// The empty matroid.
  Matroid() : Matroid(ElementSet{}, Backend::Uniform, std::make_shared<detail::UniformNode>(0)) {}

  Matroid(ElementSet ground, Backend backend, std::shared_ptr<const detail::RankNode> node)
      : ground_(ground), backend_(backend), node_(std::move(node)), memo_(std::make_shared<Memo>()) {
    fullRank_ = node_->rank(ground_);
  }

  ElementSet ground() const { return ground_; }
  int size() const { return ground_.size(); }
  int rank() const { return fullRank_; }
  Backend backend() const { return backend_; }

  /// r(S). Throws DomainError if S leaves the ground set.
  int rank(ElementSet s) const {
    if (!ground_.containsAll(s)) {
      throw DomainError("unknown element " + std::to_string((s - ground_).first()) + " in rank query");
    }
    if (const auto* t = memo_->table()) return t->rank(s);
    return node_->rank(s);
  }

  /// r*(S) = |S| + r(E - S) - r(E).
  int corank(ElementSet s) const { return s.size() + rank(ground_ - s) - fullRank_; }

  bool isIndependent(ElementSet s) const { return rank(s) == s.size(); }
  bool isCoindependent(ElementSet s) const { return corank(s) == s.size(); }

  /// Multigraph behind a graphic or cographic matroid, otherwise null.
  const Multigraph* graph() const {
    if (backend_ != Backend::Graphic && backend_ != Backend::Cographic) return nullptr;
    return &static_cast<const detail::GraphNode&>(*node_).graph();
  }

  Matroid dual() const;
  Matroid minor(ElementSet contractSet, ElementSet deleteSet) const;
  Matroid contract(ElementSet c) const { return minor(c, {}); }
  Matroid deleteSet(ElementSet d) const { return minor({}, d); }
  Matroid contract(ElementId e) const { return minor(ElementSet::single(e), {}); }
  Matroid deleteElement(ElementId e) const { return minor({}, ElementSet::single(e)); }
  Matroid restrict(ElementSet s) const { return minor({}, ground_ - s); }

  /// Caches the full rank table when the ground set is small enough. Cheap to
  /// call repeatedly; the cache is filled once and never changes afterwards.
  void materialize() const {
    if (ground_.size() > kMaxTableElements) return;
    memo_->fill(ground_, *node_);
  }

  /// Copy backed by an explicit rank table (ground set at most 24 elements).
  Matroid toExplicit() const;

  static constexpr int kMaxTableElements = 22;

 private:
  class Memo {
   public:
    const detail::TableNode* table() const {
      return ready_.load(std::memory_order_acquire) ? table_.get() : nullptr;
    }
    void fill(ElementSet ground, const detail::RankNode& node) {
      std::call_once(once_, [&] {
        table_ = std::make_unique<detail::TableNode>(ground, buildTable(ground, node));
        ready_.store(true, std::memory_order_release);
      });
    }

   private:
    std::once_flag once_;
    std::atomic<bool> ready_{false};
    std::unique_ptr<detail::TableNode> table_;
  };

 public:
  static std::vector<std::uint8_t> buildTable(ElementSet ground, const detail::RankNode& node) {
    std::vector<ElementId> elems = ground.toVector();
    std::size_t n = elems.size();
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (std::size_t i = 0; i < table.size(); ++i) {
      if ((i & 0xfff) == 0) Budget::tick();
      ElementSet s;
      for (std::size_t b = 0; b < n; ++b)
        if ((i >> b) & 1u) s.insert(elems[b]);
      table[i] = static_cast<std::uint8_t>(node.rank(s));
    }
    return table;
  }

  const detail::RankNode& node() const { return *node_; }
  std::shared_ptr<const detail::RankNode> nodePtr() const { return node_; }

 private:
  ElementSet ground_;
  Backend backend_;
  std::shared_ptr<const detail::RankNode> node_;
  std::shared_ptr<Memo> memo_;
  int fullRank_ = 0;
};

namespace detail {

class DualNode final : public RankNode {
 public:
  explicit DualNode(Matroid base) : base_(std::move(base)) {}
  int rank(ElementSet s) const override { return base_.corank(s); }
  const Matroid& base() const { return base_; }

 private:
  Matroid base_;
};

/// M/C restricted to whatever ground the owning Matroid declares.
class ContractionNode final : public RankNode {
 public:
  ContractionNode(Matroid base, ElementSet contracted)
      : base_(std::move(base)), contracted_(contracted), offset_(base_.rank(contracted)) {}
  int rank(ElementSet s) const override { return base_.rank(s | contracted_) - offset_; }
  const Matroid& base() const { return base_; }
  ElementSet contracted() const { return contracted_; }

 private:
  Matroid base_;
  ElementSet contracted_;
  int offset_;
};

/// Generalized parallel connection across T, where T is a modular flat of
/// `first` and both sides agree on T.
class GpcNode final : public RankNode {
 public:
  GpcNode(Matroid first, Matroid second, ElementSet common)
      : a_(std::move(first)), b_(std::move(second)), t_(common) {}
  int rank(ElementSet s) const override {
    ElementSet sa = s & a_.ground();
    ElementSet sb = s & b_.ground();
    int best = a_.rank(sa) + b_.rank(sb);
    forEachSubset(t_, [&](ElementSet y) {
      int v = a_.rank(y | sa) + b_.rank(y | sb) - a_.rank(y);
      if (v < best) best = v;
    });
    return best;
  }

 private:
  Matroid a_, b_;
  ElementSet t_;
};

}  // namespace detail

inline Matroid Matroid::dual() const {
  if (backend_ == Backend::Graphic || backend_ == Backend::Cographic) {
    bool toCographic = backend_ == Backend::Graphic;
    return Matroid(ground_, toCographic ? Backend::Cographic : Backend::Graphic,
                   std::make_shared<detail::GraphNode>(*graph(), toCographic));
  }
  if (auto* d = dynamic_cast<const detail::DualNode*>(node_.get()); d && d->base().ground() == ground_) {
    return d->base();
  }
  return Matroid(ground_, Backend::Derived, std::make_shared<detail::DualNode>(*this));
}

inline Matroid Matroid::minor(ElementSet c, ElementSet d) const {
  if (c.intersects(d)) throw DomainError("contract and delete sets overlap at element " + std::to_string((c & d).first()));
  if (!ground_.containsAll(c | d)) {
    throw DomainError("unknown element " + std::to_string(((c | d) - ground_).first()) + " in minor");
  }
  if (c.empty() && d.empty()) return *this;
  ElementSet newGround = ground_ - c - d;
  if (const Multigraph* g = graph()) {
    Multigraph h = backend_ == Backend::Graphic ? g->minor(c, d) : g->minor(d, c);
    return Matroid(newGround, backend_,
                   std::make_shared<detail::GraphNode>(std::move(h), backend_ == Backend::Cographic));
  }
  if (c.empty()) {
    Matroid m = *this;
    m.ground_ = newGround;
    m.fullRank_ = node_->rank(newGround);
    m.memo_ = std::make_shared<Memo>();
    return m;
  }
  // Flatten nested contractions onto the root oracle.
  if (auto* n = dynamic_cast<const detail::ContractionNode*>(node_.get())) {
    return Matroid(newGround, Backend::Derived,
                   std::make_shared<detail::ContractionNode>(n->base(), n->contracted() | c));
  }
  return Matroid(newGround, Backend::Derived, std::make_shared<detail::ContractionNode>(*this, c));
}

inline Matroid Matroid::toExplicit() const {
  if (ground_.size() > 24) throw ResourceError("explicit rank table limited to 24 elements");
  return Matroid(ground_, Backend::Explicit, std::make_shared<detail::TableNode>(ground_, buildTable(ground_, *node_)));
}

// ---------------------------------------------------------------------------
// Constructors for the concrete backends.

inline Matroid uniformMatroid(int r, int n, ElementId firstLabel = 0) {
  if (r < 0 || r > n || n > kMaxElements || firstLabel + n > kMaxElements) throw DomainError("invalid uniform matroid parameters");
  return Matroid(ElementSet(ElementSet::range(n + firstLabel).bits() & ~ElementSet::range(firstLabel).bits()),
                 Backend::Uniform, std::make_shared<detail::UniformNode>(r));
}

inline Matroid graphicMatroid(const Multigraph& g) {
  return Matroid(g.edges, Backend::Graphic, std::make_shared<detail::GraphNode>(g, false));
}

inline Matroid cographicMatroid(const Multigraph& g) {
  return Matroid(g.edges, Backend::Cographic, std::make_shared<detail::GraphNode>(g, true));
}

/// Matroid of the columns of a matrix over GF(prime); columns[label] is the
/// column for that label (rows entries reduced mod prime).
inline Matroid linearMatroid(int prime, int rows, ElementSet ground, std::vector<std::vector<std::uint32_t>> columns,
                             Backend tag = Backend::Linear) {
  if (rows > 64) throw DomainError("at most 64 rows supported");
  columns.resize(kMaxElements, std::vector<std::uint32_t>(rows, 0));
  for (auto& col : columns) {
    col.resize(rows, 0);
    for (auto& x : col) x %= static_cast<std::uint32_t>(prime);
  }
  return Matroid(ground, tag, std::make_shared<detail::LinearNode>(prime, rows, std::move(columns)));
}

/// Explicit matroid given by its rank table, indexed by subsets of `ground`
/// in increasing-label bit order.
inline Matroid explicitMatroid(ElementSet ground, std::vector<std::uint8_t> table) {
  if (table.size() != (std::size_t{1} << ground.size())) throw DomainError("rank table has wrong length");
  return Matroid(ground, Backend::Explicit, std::make_shared<detail::TableNode>(ground, std::move(table)));
}

/// Explicit matroid from a nonempty list of bases: r(S) = max |S ∩ B|.
inline Matroid matroidFromBases(ElementSet ground, const std::vector<ElementSet>& bases) {
  if (bases.empty()) throw DomainError("a matroid needs at least one basis");
  if (ground.size() > 24) throw ResourceError("explicit matroids limited to 24 elements");
  std::vector<ElementId> elems = ground.toVector();
  std::vector<std::uint8_t> table(std::size_t{1} << elems.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    ElementSet s;
    for (std::size_t b = 0; b < elems.size(); ++b)
      if ((i >> b) & 1u) s.insert(elems[b]);
    int best = 0;
    for (ElementSet bs : bases) best = std::max(best, (s & bs).size());
    table[i] = static_cast<std::uint8_t>(best);
  }
  return explicitMatroid(ground, std::move(table));
}

/// P_T(first, second): generalized parallel connection. The caller is
/// responsible for checking that T is a modular flat of `first` and that the
/// restrictions to T agree (see isModularFlat).
inline Matroid generalizedParallelConnection(const Matroid& first, const Matroid& second, ElementSet common) {
  if ((first.ground() & second.ground()) != common) throw DomainError("ground sets must meet exactly in the common set");
  return Matroid(first.ground() | second.ground(), Backend::Gpc,
                 std::make_shared<detail::GpcNode>(first, second, common));
}

/// Same ground set and same rank on every subset (exhaustive; at most 24 elements).
inline bool sameRankFunction(const Matroid& a, const Matroid& b) {
  if (a.ground() != b.ground() || a.rank() != b.rank()) return false;
  if (a.size() > 24) throw ResourceError("rank-table comparison limited to 24 elements");
  a.materialize();
  b.materialize();
  bool same = true;
  forEachSubset(a.ground(), [&](ElementSet s) {
    if (same && a.rank(s) != b.rank(s)) same = false;
  });
  return same;
}

}  // namespace splitter
