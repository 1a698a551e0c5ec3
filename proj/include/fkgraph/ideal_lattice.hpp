#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "fkgraph/graph.hpp"

namespace fkgraph {

/// (H, S) <= (H', S')  iff  H is contained in H' and S in H' u S'.
inline bool pair_leq(const AdmissiblePair& p, const AdmissiblePair& q) {
  return p.H.subset_of(q.H) && p.S.subset_of(q.H | q.S);
}

/// The lattice of admissible pairs of a graph, which indexes both the graded
/// ideals of the Leavitt path algebra and the gauge-invariant ideals of the
/// graph C*-algebra. Elements are referred to by index into `pairs()`.
class IdealLattice {
 public:
  static constexpr std::size_t kDefaultVertexCap = 16;

  IdealLattice() = default;

  /// Builds the lattice from an explicit list of admissible pairs; computes
  /// the order and the meet/join tables by bound search.
  explicit IdealLattice(std::vector<AdmissiblePair> pairs) : pairs_(std::move(pairs)) {
    const std::size_t n = pairs_.size();
    leq_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) leq_[i * n + j] = pair_leq(pairs_[i], pairs_[j]);
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        meet_[i * n + j] = meet_[j * n + i] = bound(i, j, /*lower=*/true);
        join_[i * n + j] = join_[j * n + i] = bound(i, j, /*lower=*/false);
      }
    bottom_ = find_extreme(true);
    top_ = find_extreme(false);
  }

  std::size_t size() const { return pairs_.size(); }
  const std::vector<AdmissiblePair>& pairs() const { return pairs_; }
  const AdmissiblePair& pair(std::size_t i) const { return pairs_.at(i); }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j]; }
  std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
  std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  std::size_t index_of(const AdmissiblePair& p) const {
    auto it = std::find(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end()) throw PreconditionError("pair is not an element of this lattice");
    return static_cast<std::size_t>(it - pairs_.begin());
  }

  const AdmissiblePair& pair_meet(const AdmissiblePair& p, const AdmissiblePair& q) const {
    return pairs_[meet(index_of(p), index_of(q))];
  }
  const AdmissiblePair& pair_join(const AdmissiblePair& p, const AdmissiblePair& q) const {
    return pairs_[join(index_of(p), index_of(q))];
  }

  /// Meet of an arbitrary family; the empty meet is the top element.
  template <class Range>
  std::size_t meet_all(const Range& indices) const {
    std::size_t acc = top_;
    for (std::size_t i : indices) acc = meet(acc, i);
    return acc;
  }

  /// Edges of the Hasse diagram (covering relations), as index pairs lower -> upper.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (i == j || !leq(i, j)) continue;
        bool cover = true;
        for (std::size_t k = 0; k < size() && cover; ++k)
          if (k != i && k != j && leq(i, k) && leq(k, j)) cover = false;
        if (cover) out.emplace_back(i, j);
      }
    return out;
  }

 private:
  std::size_t bound(std::size_t i, std::size_t j, bool lower) const {
    const std::size_t n = size();
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < n; ++k) {
      const bool ok = lower ? (leq(k, i) && leq(k, j)) : (leq(i, k) && leq(j, k));
      if (ok) candidates.push_back(k);
    }
    std::vector<std::size_t> best;
    for (std::size_t k : candidates) {
      const bool extreme = std::all_of(candidates.begin(), candidates.end(), [&](std::size_t c) {
        return lower ? leq(c, k) : leq(k, c);
      });
      if (extreme) best.push_back(k);
    }
    if (best.size() != 1) {
      std::ostringstream msg;
      msg << "admissible pairs #" << i << " and #" << j << " have " << best.size() << (lower ? " greatest lower" : " least upper")
          << " bounds";
      throw InvariantViolation(msg.str());
    }
    return best.front();
  }

  std::size_t find_extreme(bool lowest) const {
    for (std::size_t k = 0; k < size(); ++k) {
      bool ok = true;
      for (std::size_t c = 0; c < size() && ok; ++c) ok = lowest ? leq(k, c) : leq(c, k);
      if (ok) return k;
    }
    throw InvariantViolation("lattice has no " + std::string(lowest ? "bottom" : "top"));
  }

  std::vector<AdmissiblePair> pairs_;
  std::vector<bool> leq_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

/// All hereditary saturated subsets of the vertex set, in increasing mask order.
inline std::vector<VertexSet> hereditary_saturated_sets(const Graph& g,
                                                       std::size_t vertex_cap = IdealLattice::kDefaultVertexCap) {
  if (g.size() > vertex_cap)
    throw CapExceeded("graph has " + std::to_string(g.size()) + " vertices; the lattice cap is " + std::to_string(vertex_cap));
  std::vector<VertexSet> out;
  g.all().for_each_subset([&](VertexSet H) {
    if (is_hereditary(g, H) && is_saturated(g, H)) out.push_back(H);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Enumerates every admissible pair and builds the lattice. Pairs are ordered
/// by |H| + |S|, then H, then S, so the bottom (empty, empty) comes first.
inline IdealLattice enumerate_admissible_pairs(const Graph& g, std::size_t vertex_cap = IdealLattice::kDefaultVertexCap) {
  std::vector<AdmissiblePair> pairs;
  for (VertexSet H : hereditary_saturated_sets(g, vertex_cap))
    breaking_vertices(g, H).for_each_subset([&](VertexSet S) { pairs.push_back({H, S}); });
  std::sort(pairs.begin(), pairs.end(), [](const AdmissiblePair& a, const AdmissiblePair& b) {
    const auto ka = a.H.size() + a.S.size();
    const auto kb = b.H.size() + b.S.size();
    if (ka != kb) return ka < kb;
    return a < b;
  });
  return IdealLattice(std::move(pairs));
}

}  // namespace fkgraph
