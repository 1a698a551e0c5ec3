#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "fkgraph/ideal_lattice.hpp"
#include "fkgraph/report.hpp"

namespace fkgraph {

/// Y = U \ V for opens V inside U. U is the smallest open containing Y.
/// Opens are identified with lattice indices (open i is W(lattice element i)).
struct LocallyClosedSet {
  PointSet points;
  std::size_t U = 0;
  std::size_t V = 0;
  VertexSet D;  ///< H of phi(U) minus H of phi(V): the vertices of the subquotient.

  bool operator==(const LocallyClosedSet&) const = default;
};

/// The prime spectrum of the admissible-pair lattice with its hull-kernel
/// topology. The same space serves as the graded prime spectrum of the
/// Leavitt path algebra and the gauge prime space of the graph C*-algebra.
class SpectrumSpace {
 public:
  SpectrumSpace() = default;

  explicit SpectrumSpace(IdealLattice lattice) : lattice_(std::move(lattice)) {
    const auto& L = lattice_;
    for (std::size_t p = 0; p < L.size(); ++p)
      if (p != L.top() && is_prime(p)) points_.push_back(p);
    if (points_.size() > PointSet::kMaxSize)
      throw CapExceeded("spectrum has more than " + std::to_string(PointSet::kMaxSize) + " points");
    opens_.reserve(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) {
      opens_.push_back(w_set(i));
      open_index_.emplace(opens_.back(), i);
    }
    if (open_index_.size() != L.size())
      throw InvariantViolation("distinct lattice elements have the same open set; the kernel identity fails");
  }

  const IdealLattice& lattice() const { return lattice_; }
  std::size_t size() const { return points_.size(); }
  /// Lattice index of point p.
  std::size_t point(std::size_t p) const { return points_.at(p); }
  const std::vector<std::size_t>& points() const { return points_; }
  PointSet all() const { return PointSet::full(size()); }

  /// Point p contains lattice element I (as ideals: I is a subset of p).
  bool contains(std::size_t p, std::size_t I) const { return lattice_.leq(I, points_[p]); }

  /// Meet over T; ker of the empty set is the top element.
  std::size_t ker(PointSet T) const {
    std::size_t acc = lattice_.top();
    for (std::size_t p : T.elements()) acc = lattice_.meet(acc, points_[p]);
    return acc;
  }

  /// Points containing I.
  PointSet hull(std::size_t I) const {
    PointSet out;
    for (std::size_t p = 0; p < size(); ++p)
      if (contains(p, I)) out.insert(p);
    return out;
  }

  PointSet closure(PointSet T) const { return hull(ker(T)); }

  /// W(I): points not containing I.
  PointSet w_set(std::size_t I) const { return hull(I).complement(size()); }

  /// Opens in lattice order: opens()[i] == gamma(i).
  const std::vector<PointSet>& opens() const { return opens_; }
  bool is_open(PointSet U) const { return open_index_.contains(U); }
  /// Lattice index corresponding to an open set.
  std::size_t open_index(PointSet U) const {
    auto it = open_index_.find(U);
    if (it == open_index_.end()) throw PreconditionError("point set is not open");
    return it->second;
  }

  /// phi(U) = ker(complement of U), as a lattice index.
  std::size_t phi(PointSet U) const { return ker(U.complement(size())); }
  PointSet gamma(std::size_t I) const { return w_set(I); }

  /// q lies in the closure of {p}.
  bool specializes(std::size_t p, std::size_t q) const { return contains(q, points_[p]); }

  /// Smallest open set containing T (finite spaces have one).
  PointSet open_hull(PointSet T) const {
    PointSet acc = all();
    for (const auto& U : opens_)
      if (T.subset_of(U)) acc &= U;
    return acc;
  }

  /// Every locally closed subset once, with canonical (U, V), sorted by
  /// point mask. The empty set is included.
  std::vector<LocallyClosedSet> locally_closed_sets() const {
    std::vector<PointSet> seen;
    for (const auto& U : opens_)
      for (const auto& V : opens_)
        if (V.subset_of(U)) seen.push_back(U - V);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    std::vector<LocallyClosedSet> out;
    out.reserve(seen.size());
    for (PointSet Y : seen) out.push_back(canonical(Y));
    return out;
  }

  /// Canonical presentation of a locally closed set.
  LocallyClosedSet canonical(PointSet Y) const {
    const PointSet U = open_hull(Y);
    const PointSet V = U - Y;
    if (!is_open(V)) throw PreconditionError("point set is not locally closed");
    LocallyClosedSet lc;
    lc.points = Y;
    lc.U = open_index(U);
    lc.V = open_index(V);
    lc.D = lattice_.pair(lc.U).H - lattice_.pair(lc.V).H;
    return lc;
  }

  bool is_locally_closed(PointSet Y) const {
    if (!Y.subset_of(all())) return false;
    return is_open(open_hull(Y) - Y);
  }

  /// Every (U, V) with V inside U and U \ V == Y, as lattice indices.
  std::vector<std::pair<std::size_t, std::size_t>> presentations(PointSet Y) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < opens_.size(); ++u)
      for (std::size_t v = 0; v < opens_.size(); ++v)
        if (opens_[v].subset_of(opens_[u]) && opens_[u] - opens_[v] == Y) out.emplace_back(u, v);
    return out;
  }

 private:
  /// For all I, J: meet(I, J) <= P implies I <= P or J <= P.
  bool is_prime(std::size_t P) const {
    const auto& L = lattice_;
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (L.leq(i, P)) continue;
      for (std::size_t j = i; j < L.size(); ++j)
        if (!L.leq(j, P) && L.leq(L.meet(i, j), P)) return false;
    }
    return true;
  }

  IdealLattice lattice_;
  std::vector<std::size_t> points_;
  std::vector<PointSet> opens_;
  std::unordered_map<PointSet, std::size_t> open_index_;
};

inline SpectrumSpace s_primes(const IdealLattice& L) { return SpectrumSpace(L); }

inline std::string format_points(PointSet T) {
  std::string s = "{";
  for (std::size_t p : T.elements()) s += (s.size() > 1 ? "," : "") + std::to_string(p);
  return s + "}";
}

// ---------------------------------------------------------------------------
// Self-checks

namespace detail {

/// All subsets when the space is small, otherwise a seeded sample.
inline std::vector<PointSet> test_subsets(const SpectrumSpace& sp, std::size_t exhaustive_limit, std::size_t samples) {
  std::vector<PointSet> out;
  if (sp.size() <= exhaustive_limit) {
    sp.all().for_each_subset([&](PointSet T) { out.push_back(T); });
    std::sort(out.begin(), out.end());
    return out;
  }
  std::mt19937_64 rng(0x5eed);
  const std::uint64_t mask = sp.all().mask();
  out.push_back(PointSet());
  out.push_back(sp.all());
  for (std::size_t i = 0; i < samples; ++i) out.emplace_back(rng() & mask);
  return out;
}

}  // namespace detail

/// The four closure axioms: empty set, extensive, idempotent, additive.
/// Exhaustive up to 6 points, sampled above.
inline Report verify_kuratowski(const SpectrumSpace& sp) {
  Report r{"kuratowski"};
  r.expect(sp.closure(PointSet()).empty(), "closure of the empty set is nonempty");
  const auto subsets = detail::test_subsets(sp, 6, 256);
  for (PointSet T : subsets) {
    const PointSet c = sp.closure(T);
    r.expect(T.subset_of(c), "T not contained in its closure, T=" + format_points(T));
    r.expect(sp.closure(c) == c, "closure not idempotent at T=" + format_points(T));
  }
  for (PointSet T1 : subsets)
    for (PointSet T2 : subsets)
      r.expect(sp.closure(T1 | T2) == (sp.closure(T1) | sp.closure(T2)),
               "closure not additive at " + format_points(T1) + ", " + format_points(T2));
  return r;
}

/// Every lattice element is the kernel of the points above it.
inline Report verify_kernel_identity(const SpectrumSpace& sp) {
  Report r{"kernel_identity"};
  const auto& L = sp.lattice();
  for (std::size_t I = 0; I < L.size(); ++I)
    r.expect(sp.ker(sp.hull(I)) == I, "lattice element #" + std::to_string(I) + " is not the kernel of its hull");
  return r;
}

/// phi and gamma are mutually inverse order isomorphisms that turn union and
/// intersection of opens into join and meet; the space is T0.
inline Report verify_lattice_isomorphism(const SpectrumSpace& sp) {
  Report r{"lattice_isomorphism"};
  const auto& L = sp.lattice();
  for (std::size_t I = 0; I < L.size(); ++I) {
    r.expect(sp.is_open(sp.gamma(I)), "W(#" + std::to_string(I) + ") is not open");
    r.expect(sp.phi(sp.gamma(I)) == I, "phi(gamma(#" + std::to_string(I) + ")) != #" + std::to_string(I));
  }
  // Opens are closed under union and intersection, and complements of opens are closed.
  for (const auto& U : sp.opens()) {
    r.expect(sp.gamma(sp.phi(U)) == U, "gamma(phi(U)) != U for U=" + format_points(U));
    r.expect(sp.closure(U.complement(sp.size())) == U.complement(sp.size()), "complement of open not closed");
    for (const auto& V : sp.opens()) {
      r.expect(sp.is_open(U | V) && sp.is_open(U & V), "opens not closed under union/intersection");
      if (!sp.is_open(U | V) || !sp.is_open(U & V)) continue;
      const std::size_t u = sp.open_index(U), v = sp.open_index(V);
      r.expect(sp.phi(U | V) == L.join(u, v), "phi(U u V) != phi(U) v phi(V)");
      r.expect(sp.phi(U & V) == L.meet(u, v), "phi(U n V) != phi(U) ^ phi(V)");
      if (V.subset_of(U)) r.expect(L.leq(sp.phi(V), sp.phi(U)), "phi not order preserving");
    }
  }
  for (std::size_t I = 0; I < L.size(); ++I)
    for (std::size_t J = 0; J < L.size(); ++J)
      if (L.leq(I, J)) r.expect(sp.gamma(I).subset_of(sp.gamma(J)), "gamma not order preserving");
  for (std::size_t p = 0; p < sp.size(); ++p)
    for (std::size_t q = p + 1; q < sp.size(); ++q)
      r.expect(sp.closure(PointSet::single(p)) != sp.closure(PointSet::single(q)),
               "points " + std::to_string(p) + " and " + std::to_string(q) + " have equal closures");
  return r;
}

/// The subquotient vertex set H_U \ H_V depends only on U \ V.
inline Report verify_presentation_independence(const SpectrumSpace& sp) {
  Report r{"presentation_independence"};
  const auto& L = sp.lattice();
  for (const auto& lc : sp.locally_closed_sets()) {
    r.expect(sp.opens()[lc.U] - sp.opens()[lc.V] == lc.points, "canonical presentation is wrong");
    for (auto [u, v] : sp.presentations(lc.points))
      r.expect(L.pair(u).H - L.pair(v).H == lc.D,
               "subquotient vertex set depends on the presentation of " + format_points(lc.points));
  }
  return r;
}

}  // namespace fkgraph
