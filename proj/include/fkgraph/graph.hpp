#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fkgraph/error.hpp"
#include "fkgraph/subset.hpp"

namespace fkgraph {

/// Number of parallel edges: a nonnegative integer or infinity.
class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  constexpr Multiplicity(std::uint64_t count) : count_(count) {}  // NOLINT(implicit)

  static constexpr Multiplicity infinite() {
    Multiplicity m;
    m.inf_ = true;
    return m;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_zero() const { return !inf_ && count_ == 0; }
  /// Finite count; precondition `!is_infinite()`.
  constexpr std::uint64_t count() const { return count_; }

  Multiplicity operator+(Multiplicity o) const {
    if (inf_ || o.inf_) return infinite();
    if (count_ > std::numeric_limits<std::uint64_t>::max() - o.count_)
      throw std::overflow_error("edge multiplicity overflow");
    return Multiplicity(count_ + o.count_);
  }
  Multiplicity& operator+=(Multiplicity o) { return *this = *this + o; }

  constexpr bool operator==(const Multiplicity&) const = default;

  std::string to_string() const { return inf_ ? "inf" : std::to_string(count_); }

 private:
  std::uint64_t count_ = 0;
  bool inf_ = false;
};

/// Finite directed graph in multiplicity-matrix form. Vertices are indexed by
/// declaration order; all set computations use that ordering.
class Graph {
 public:
  static constexpr std::size_t kMaxVertices = VertexSet::kMaxSize;

  Graph() = default;

  explicit Graph(std::vector<std::string> names) {
    for (auto& name : names) add_vertex(std::move(name));
  }

  /// Declares a vertex and returns its index. Throws on duplicates.
  std::size_t add_vertex(std::string name) {
    if (index_.contains(name)) throw PreconditionError("duplicate vertex '" + name + "'");
    if (names_.size() == kMaxVertices)
      throw CapExceeded("graphs are limited to " + std::to_string(kMaxVertices) + " vertices");
    const std::size_t n = names_.size();
    std::vector<Multiplicity> grown((n + 1) * (n + 1));
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) grown[v * (n + 1) + w] = adj_[v * n + w];
    adj_ = std::move(grown);
    index_.emplace(name, n);
    names_.push_back(std::move(name));
    return n;
  }

  /// Adds `k` edges v -> w; multiplicities accumulate.
  void add_edges(std::size_t v, std::size_t w, Multiplicity k) {
    check_index(v);
    check_index(w);
    adj_[v * size() + w] += k;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t v) const { return names_.at(v); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw PreconditionError("unknown vertex '" + name + "'");
  }

  Multiplicity mult(std::size_t v, std::size_t w) const { return adj_[v * size() + w]; }

  VertexSet all() const { return VertexSet::full(size()); }

  /// Targets of edges leaving v.
  VertexSet successors(std::size_t v) const {
    VertexSet out;
    for (std::size_t w = 0; w < size(); ++w)
      if (!mult(v, w).is_zero()) out.insert(w);
    return out;
  }

  /// Number of edges from v into `targets`.
  Multiplicity out_mult(std::size_t v, VertexSet targets) const {
    Multiplicity total;
    for (std::size_t w : targets.elements()) total += mult(v, w);
    return total;
  }
  Multiplicity out_mult(std::size_t v) const { return out_mult(v, all()); }

  bool is_sink(std::size_t v) const { return out_mult(v).is_zero(); }
  bool is_infinite_emitter(std::size_t v) const { return out_mult(v).is_infinite(); }
  /// 0 < |s^{-1}(v)| < infinity.
  bool is_regular(std::size_t v) const {
    const auto m = out_mult(v);
    return !m.is_infinite() && !m.is_zero();
  }

  bool row_finite() const {
    for (const auto& m : adj_)
      if (m.is_infinite()) return false;
    return true;
  }

  VertexSet regular_vertices() const {
    VertexSet out;
    for (std::size_t v = 0; v < size(); ++v)
      if (is_regular(v)) out.insert(v);
    return out;
  }

  bool operator==(const Graph&) const = default;

 private:
  void check_index(std::size_t v) const {
    if (v >= size()) throw PreconditionError("vertex index " + std::to_string(v) + " out of range");
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Multiplicity> adj_;  // row-major, adj_[v * n + w] = #edges v -> w
};

/// Indexes a graded ideal of L_k(E) and a gauge-invariant ideal of C*(E):
/// H hereditary saturated, S a set of breaking vertices for H.
struct AdmissiblePair {
  VertexSet H;
  VertexSet S;

  auto operator<=>(const AdmissiblePair&) const = default;
};

// ---------------------------------------------------------------------------
// Reachability, hereditary and saturated sets

/// Every vertex reachable from `from` by a path of length >= 0.
inline VertexSet forward_closure(const Graph& g, VertexSet from) {
  VertexSet seen = from;
  std::vector<std::size_t> stack = from.elements();
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : (g.successors(v) - seen).elements()) {
      seen.insert(w);
      stack.push_back(w);
    }
  }
  return seen;
}

/// v >= w: there is a directed path (possibly of length 0) from v to w.
inline bool reaches(const Graph& g, std::size_t v, std::size_t w) {
  if (v >= g.size() || w >= g.size()) throw PreconditionError("unknown vertex");
  return forward_closure(g, VertexSet::single(v)).contains(w);
}
inline bool reaches(const Graph& g, const std::string& v, const std::string& w) {
  return reaches(g, g.index_of(v), g.index_of(w));
}

inline void check_subset(const Graph& g, VertexSet s) {
  if (!s.subset_of(g.all())) throw PreconditionError("vertex set is not a subset of the graph");
}

/// No edge leaves H.
inline bool is_hereditary(const Graph& g, VertexSet H) {
  check_subset(g, H);
  for (std::size_t v : H.elements())
    if (!g.successors(v).subset_of(H)) return false;
  return true;
}

/// Every regular vertex whose edges all land in H belongs to H.
inline bool is_saturated(const Graph& g, VertexSet H) {
  check_subset(g, H);
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!H.contains(v) && g.is_regular(v) && g.successors(v).subset_of(H)) return false;
  return true;
}

/// Smallest hereditary saturated set containing X.
inline VertexSet saturated_hereditary_closure(const Graph& g, VertexSet X) {
  check_subset(g, X);
  VertexSet H = forward_closure(g, X);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!H.contains(v) && g.is_regular(v) && g.successors(v).subset_of(H)) {
        H.insert(v);
        grew = true;
      }
    }
    // Saturation only adds vertices whose successors are already in H, so
    // heredity is preserved without another forward pass.
  }
  return H;
}

/// B_H: infinite emitters outside H sending a nonzero finite number of edges
/// into the complement of H.
inline VertexSet breaking_vertices(const Graph& g, VertexSet H) {
  if (!is_hereditary(g, H) || !is_saturated(g, H))
    throw PreconditionError("breaking_vertices requires a hereditary saturated set");
  const VertexSet outside = H.complement(g.size());
  VertexSet out;
  for (std::size_t v : outside.elements()) {
    if (!g.is_infinite_emitter(v)) continue;
    const auto m = g.out_mult(v, outside);
    if (!m.is_infinite() && !m.is_zero()) out.insert(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Condition (K)

/// Number of return paths based at v (paths of length >= 1 from v to v that
/// do not pass through v in between), saturated at 2.
inline int return_path_count(const Graph& g, std::size_t v) {
  const std::size_t n = g.size();
  const VertexSet others = VertexSet::full(n) - VertexSet::single(v);

  // Vertices other than v lying on some return path: reachable from v's
  // successors without passing v, and able to reach v without passing v.
  VertexSet from_v;
  {
    std::vector<std::size_t> stack;
    for (std::size_t w : (g.successors(v) & others).elements()) {
      from_v.insert(w);
      stack.push_back(w);
    }
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : (g.successors(u) & others & from_v.complement(n)).elements()) {
        from_v.insert(w);
        stack.push_back(w);
      }
    }
  }
  VertexSet to_v;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t u : (others - to_v).elements()) {
      if (!g.mult(u, v).is_zero() || g.successors(u).intersects(to_v)) {
        to_v.insert(u);
        grew = true;
      }
    }
  }
  const VertexSet mid = from_v & to_v;

  auto add = [](int a, int b) { return std::min(2, a + b); };
  auto times = [](Multiplicity m, int paths) {
    if (paths == 0 || m.is_zero()) return 0;
    if (m.is_infinite() || m.count() >= 2) return 2;
    return paths;
  };

  // paths[u] = number of paths u -> v with intermediate vertices in `mid`.
  // A cycle inside `mid` yields infinitely many return paths.
  std::vector<int> paths(n, 0);
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  bool cyclic = false;
  auto visit = [&](auto&& self, std::size_t u) -> void {
    state[u] = 1;
    int total = times(g.mult(u, v), 1);
    for (std::size_t w : (g.successors(u) & mid).elements()) {
      if (state[w] == 1) {
        cyclic = true;
        continue;
      }
      if (state[w] == 0) self(self, w);
      total = add(total, times(g.mult(u, w), paths[w]));
    }
    paths[u] = total;
    state[u] = 2;
  };
  for (std::size_t u : mid.elements())
    if (state[u] == 0) visit(visit, u);
  if (cyclic) return 2;

  int total = times(g.mult(v, v), 1);
  for (std::size_t w : (g.successors(v) & mid).elements()) total = add(total, times(g.mult(v, w), paths[w]));
  return total;
}

/// Every vertex is the base point of zero or at least two return paths.
inline bool satisfies_condition_K(const Graph& g) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if (return_path_count(g, v) == 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Restriction and quotient graphs (row-finite only)

/// Full subgraph on `keep`, vertex order inherited from g.
inline Graph induced_subgraph(const Graph& g, VertexSet keep) {
  check_subset(g, keep);
  const auto idx = keep.elements();
  std::vector<std::string> names;
  names.reserve(idx.size());
  for (std::size_t v : idx) names.push_back(g.name(v));
  Graph out(std::move(names));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const auto m = g.mult(idx[a], idx[b]);
      if (!m.is_zero()) out.add_edges(a, b, m);
    }
  return out;
}

/// Quotient graph E \ (H, S); in the row-finite case S is empty and this is
/// deletion of H.
inline Graph quotient(const Graph& g, const AdmissiblePair& p) {
  if (!g.row_finite()) throw PreconditionError("quotient requires a row-finite graph");
  if (!p.S.empty()) throw PreconditionError("a row-finite graph has no breaking vertices");
  if (!is_hereditary(g, p.H) || !is_saturated(g, p.H))
    throw PreconditionError("quotient requires a hereditary saturated set");
  return induced_subgraph(g, p.H.complement(g.size()));
}

/// Graph whose algebra is the subquotient I_{H_U} / I_{V}: restriction of g to
/// D = H_U \ V. Edges from D into V are dropped.
inline Graph subquotient_graph(const Graph& g, VertexSet D, VertexSet ideal) {
  if (!g.row_finite()) throw PreconditionError("subquotient_graph requires a row-finite graph");
  check_subset(g, D);
  if (D.intersects(ideal)) throw PreconditionError("D must be disjoint from the ideal set");
  if (!is_hereditary(g, ideal) || !is_saturated(g, ideal))
    throw PreconditionError("ideal set must be hereditary and saturated");
  const VertexSet upper = D | ideal;
  if (!is_hereditary(g, upper) || !is_saturated(g, upper))
    throw PreconditionError("D together with the ideal set must be hereditary and saturated");
  return induced_subgraph(g, D);
}

}  // namespace fkgraph
