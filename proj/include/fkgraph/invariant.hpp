#pragma once

// Filtered, ordered K-theory over the gauge prime spectrum, and a bounded
// decision procedure for isomorphism of two such invariants.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fkgraph/ktheory.hpp"

namespace fkgraph {

/// Maps of one six-term sequence, with the three subquotients referred to by
/// index into FilteredK::lcs.
struct SequenceMaps {
  std::size_t sub = 0, all = 0, quot = 0;
  IntMatrix iota0, pi0, delta, iota1, pi1, partial;
};

struct FilteredK {
  static constexpr std::size_t kDefaultPointCap = 7;

  struct Triple {
    std::size_t U1, U2, U3;  ///< open sets, as lattice indices
    std::size_t sequence;    ///< index into `sequences`
  };

  Graph graph;
  SpectrumSpace space;
  std::vector<LocallyClosedSet> lcs;
  std::vector<KData> kmap;  ///< parallel to `lcs`
  std::map<PointSet, std::size_t> lc_index;
  std::vector<SequenceMaps> sequences;  ///< one per distinct (sub, quot) pair
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> sequence_index;
  std::vector<Triple> triples;  ///< every open triple U1 <= U2 <= U3
  std::size_t full = 0;         ///< lc index of the whole space

  const KData& at(PointSet Y) const { return kmap.at(lc_index.at(Y)); }
  const IntVector& unit_class() const { return kmap[full].unit_class; }
};

struct AssembleOptions {
  std::size_t vertex_cap = IdealLattice::kDefaultVertexCap;
  std::size_t point_cap = FilteredK::kDefaultPointCap;
};

inline FilteredK assemble(const Graph& g, const AssembleOptions& opts = {}) {
  if (!g.row_finite()) throw PreconditionError("filtered K-theory requires a row-finite graph");
  FilteredK fk;
  fk.graph = g;
  fk.space = SpectrumSpace(enumerate_admissible_pairs(g, opts.vertex_cap));
  if (fk.space.size() > opts.point_cap)
    throw CapExceeded("spectrum has " + std::to_string(fk.space.size()) + " points; the cap is " +
                      std::to_string(opts.point_cap));
  fk.lcs = fk.space.locally_closed_sets();
  for (std::size_t i = 0; i < fk.lcs.size(); ++i) {
    fk.kmap.push_back(k_data(g, fk.space, fk.lcs[i]));
    fk.lc_index.emplace(fk.lcs[i].points, i);
  }
  fk.full = fk.lc_index.at(fk.space.all());

  const auto& opens = fk.space.opens();
  for (std::size_t u1 = 0; u1 < opens.size(); ++u1)
    for (std::size_t u2 = 0; u2 < opens.size(); ++u2) {
      if (!opens[u1].subset_of(opens[u2])) continue;
      for (std::size_t u3 = 0; u3 < opens.size(); ++u3) {
        if (!opens[u2].subset_of(opens[u3])) continue;
        const std::size_t sub = fk.lc_index.at(opens[u2] - opens[u1]);
        const std::size_t quot = fk.lc_index.at(opens[u3] - opens[u2]);
        auto [it, fresh] = fk.sequence_index.try_emplace({sub, quot}, fk.sequences.size());
        if (fresh) {
          const SixTerm s = six_term_for(g, fk.kmap[sub].D, fk.kmap[quot].D);
          SequenceMaps m;
          m.sub = sub;
          m.quot = quot;
          m.all = fk.lc_index.at(opens[u3] - opens[u1]);
          if (s.all.D != fk.kmap[m.all].D || s.sub.K0.factors != fk.kmap[sub].K0.factors)
            throw InvariantViolation("six-term groups disagree with the subquotient table");
          m.iota0 = s.iota0;
          m.pi0 = s.pi0;
          m.delta = s.delta;
          m.iota1 = s.iota1;
          m.pi1 = s.pi1;
          m.partial = s.partial;
          fk.sequences.push_back(std::move(m));
        }
        fk.triples.push_back({u1, u2, u3, it->second});
      }
    }
  return fk;
}

// ---------------------------------------------------------------------------
// Homeomorphisms of finite T0 spaces

/// Bijections of points preserving specialization in both directions.
/// Entry p of each map is the image of point p.
inline std::vector<std::vector<std::size_t>> poset_isomorphisms(const SpectrumSpace& A, const SpectrumSpace& B) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = A.size();
  if (B.size() != n) return out;
  auto profile = [](const SpectrumSpace& S, std::size_t p) {
    std::size_t up = 0, down = 0;
    for (std::size_t q = 0; q < S.size(); ++q) {
      up += S.specializes(p, q);
      down += S.specializes(q, p);
    }
    return std::pair{up, down};
  };
  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t p) -> void {
    if (p == n) {
      out.push_back(image);
      return;
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (used[q] || profile(A, p) != profile(B, q)) continue;
      bool ok = true;
      for (std::size_t a = 0; a < p && ok; ++a)
        ok = A.specializes(a, p) == B.specializes(image[a], q) && A.specializes(p, a) == B.specializes(q, image[a]);
      if (!ok) continue;
      used[q] = true;
      image[p] = q;
      self(self, p + 1);
      used[q] = false;
    }
  };
  extend(extend, 0);
  return out;
}

inline PointSet map_points(const std::vector<std::size_t>& h, PointSet T) {
  PointSet out;
  for (std::size_t p : T.elements()) out.insert(h[p]);
  return out;
}

// ---------------------------------------------------------------------------
// Comparison

enum class Outcome { Distinguished, Compatible, Unknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Distinguished: return "DISTINGUISHED";
    case Outcome::Compatible: return "COMPATIBLE";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

/// A homeomorphism plus, for each locally closed set of A (by index), the K0
/// and K1 isomorphisms onto the corresponding groups of B.
struct Witness {
  std::vector<std::size_t> point_map;
  std::vector<IntMatrix> alpha0, alpha1;
};

struct CompareVerdict {
  Outcome outcome = Outcome::Unknown;
  std::string reason;
  std::optional<Witness> witness;  ///< present for COMPATIBLE
  std::size_t homeomorphisms = 0;
  std::size_t nodes = 0;
};

struct CompareOptions {
  bool unital = true;
  long long budget = 2;
  std::size_t node_cap = 2'000'000;
  std::size_t cone_bound = kDefaultConeBound;
};

namespace detail {

/// alpha is an order isomorphism: it maps the cone of `a` into the cone of
/// `b`, and the cone of `b` lies in the monoid generated by alpha's image of
/// the cone of `a`.
inline ConeResult order_preserving(const KData& a, const KData& b, const IntMatrix& alpha, std::size_t bound) {
  ConeResult r{true, true};
  std::vector<IntVector> images;
  for (const auto& gvec : a.cone_generators) {
    images.push_back(b.K0.reduce(alpha * gvec));
    const auto c = cone_membership(b.K0, b.cone_generators, images.back(), bound);
    if (c.conclusive && !c.member) return {false, true};
    if (!c.conclusive) r.conclusive = false;
  }
  for (const auto& gvec : b.cone_generators) {
    const auto c = cone_membership(b.K0, images, gvec, bound);
    if (c.conclusive && !c.member) return {false, true};
    if (!c.conclusive) r.conclusive = false;
  }
  return r;
}

/// Backtracking search for one homeomorphism.
class FamilySearch {
 public:
  enum class Result { Found, Exhausted, Incomplete };

  FamilySearch(const FilteredK& A, const FilteredK& B, const std::vector<std::size_t>& h, const CompareOptions& opts,
               std::size_t& nodes)
      : A_(A), B_(B), h_(h), opts_(opts), nodes_(nodes) {
    const std::size_t n = A.lcs.size();
    target_.resize(n);
    for (std::size_t i = 0; i < n; ++i) target_[i] = B.lc_index.at(map_points(h, A.lcs[i].points));
    build_variables();
    build_equations();
    order_variables();
  }

  Result run() {
    assignment_.assign(vars_.size(), 0);
    assigned_.assign(vars_.size(), false);
    uncertain_.assign(vars_.size(), false);
    const bool done = descend(0);
    if (done) return Result::Found;
    if (aborted_ || saw_uncertain_ || !exhaustive_) return Result::Incomplete;
    return Result::Exhausted;
  }

  Witness witness() const {
    Witness w;
    w.point_map = h_;
    w.alpha0.resize(A_.lcs.size());
    w.alpha1.resize(A_.lcs.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      const auto& var = vars_[v];
      const IntMatrix& m = (*var.candidates).isos[assignment_[v]];
      (var.degree == 0 ? w.alpha0 : w.alpha1)[var.lc] = m;
    }
    return w;
  }

  bool cone_inconclusive() const { return saw_uncertain_; }

 private:
  struct Variable {
    std::size_t lc;
    int degree;
    const IsoList* candidates;
    std::vector<int> unary;  ///< -1 unknown, 0 rejected, 1 accepted, 2 accepted but uncertain
  };
  struct Equation {
    // alpha[left_var] * a_map == b_map * alpha[right_var], compared in `target`.
    std::size_t left_var, right_var;
    const IntMatrix* a_map;
    const IntMatrix* b_map;
    const FgAbGroup* target;
  };

  const FgAbGroup& group_a(std::size_t lc, int deg) const { return deg == 0 ? A_.kmap[lc].K0 : A_.kmap[lc].K1; }
  const FgAbGroup& group_b(std::size_t lc, int deg) const {
    return deg == 0 ? B_.kmap[target_[lc]].K0 : B_.kmap[target_[lc]].K1;
  }

  const IsoList& isos_for(const IntVector& factors) {
    auto it = iso_cache_.find(factors);
    if (it == iso_cache_.end()) {
      FgAbGroup G;
      G.factors = factors;
      it = iso_cache_.emplace(factors, group_isos(G, G, opts_.budget)).first;
    }
    return it->second;
  }

  void build_variables() {
    var_of_.assign(A_.lcs.size() * 2, kNone);
    for (std::size_t lc = 0; lc < A_.lcs.size(); ++lc)
      for (int deg = 0; deg < 2; ++deg) {
        const auto& G = group_a(lc, deg);
        if (G.trivial()) continue;
        const IsoList& list = isos_for(G.factors);
        if (!list.exhaustive) exhaustive_ = false;
        var_of_[lc * 2 + static_cast<std::size_t>(deg)] = vars_.size();
        vars_.push_back({lc, deg, &list, std::vector<int>(list.isos.size(), -1)});
      }
  }

  std::size_t var(std::size_t lc, int deg) const { return var_of_[lc * 2 + static_cast<std::size_t>(deg)]; }

  void add_equation(std::size_t lc_left, std::size_t lc_right, int deg_left, int deg_right, const IntMatrix& a_map,
                    const IntMatrix& b_map) {
    const std::size_t l = var(lc_left, deg_left);
    const std::size_t r = var(lc_right, deg_right);
    // A trivial source or target makes both sides zero maps.
    if (l == kNone || r == kNone) return;
    equations_.push_back({l, r, &a_map, &b_map, &group_b(lc_left, deg_left)});
  }

  void build_equations() {
    for (const auto& s : A_.sequences) {
      const auto& t = B_.sequences.at(B_.sequence_index.at({target_[s.sub], target_[s.quot]}));
      add_equation(s.all, s.sub, 0, 0, s.iota0, t.iota0);
      add_equation(s.quot, s.all, 0, 0, s.pi0, t.pi0);
      add_equation(s.all, s.sub, 1, 1, s.iota1, t.iota1);
      add_equation(s.quot, s.all, 1, 1, s.pi1, t.pi1);
      add_equation(s.sub, s.quot, 0, 1, s.partial, t.partial);
    }
  }

  /// Greedy: the full-space K0 first, then the variable most connected to the
  /// ones already placed.
  void order_variables() {
    const std::size_t n = vars_.size();
    std::vector<bool> placed(n, false);
    position_.assign(n, 0);
    auto links = [&](std::size_t v) {
      std::size_t k = 0;
      for (const auto& e : equations_)
        if ((e.left_var == v && placed[e.right_var]) || (e.right_var == v && placed[e.left_var])) ++k;
      return k;
    };
    const std::size_t first = var(A_.full, 0);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = kNone;
      if (step == 0 && first != kNone) {
        best = first;
      } else {
        std::size_t best_links = 0;
        for (std::size_t v = 0; v < n; ++v) {
          if (placed[v]) continue;
          const std::size_t k = links(v);
          if (best == kNone || k > best_links ||
              (k == best_links && vars_[v].candidates->isos.size() < vars_[best].candidates->isos.size())) {
            best = v;
            best_links = k;
          }
        }
      }
      placed[best] = true;
      position_[best] = step;
      order_.push_back(best);
    }
    // Equations are checked when the later of their two variables is assigned.
    checks_.assign(n, {});
    for (std::size_t e = 0; e < equations_.size(); ++e) {
      const auto& eq = equations_[e];
      checks_[std::max(position_[eq.left_var], position_[eq.right_var])].push_back(e);
    }
  }

  /// Cone and unit conditions on a single K0 isomorphism; memoized.
  int unary(std::size_t v, std::size_t cand) {
    auto& memo = vars_[v].unary[cand];
    if (memo != -1) return memo;
    const auto& var = vars_[v];
    if (var.degree == 1) return memo = 1;
    const IntMatrix& alpha = var.candidates->isos[cand];
    const KData& a = A_.kmap[var.lc];
    const KData& b = B_.kmap[target_[var.lc]];
    if (opts_.unital && var.lc == A_.full) {
      IntVector diff = alpha * a.unit_class;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b.unit_class[i];
      if (!b.K0.is_zero(diff)) return memo = 0;
    }
    const auto c = order_preserving(a, b, alpha, opts_.cone_bound);
    if (!c.member) return memo = 0;
    return memo = c.conclusive ? 1 : 2;
  }

  bool satisfied(const Equation& e) const {
    const IntMatrix& left = vars_[e.left_var].candidates->isos[assignment_[e.left_var]];
    const IntMatrix& right = vars_[e.right_var].candidates->isos[assignment_[e.right_var]];
    return maps_equal(*e.target, left * *e.a_map, *e.b_map * right);
  }

  bool descend(std::size_t step) {
    if (step == order_.size()) {
      if (std::any_of(uncertain_.begin(), uncertain_.end(), [](bool u) { return u; })) {
        saw_uncertain_ = true;
        return false;
      }
      return true;
    }
    const std::size_t v = order_[step];
    const std::size_t count = vars_[v].candidates->isos.size();
    for (std::size_t c = 0; c < count; ++c) {
      if (++nodes_ > opts_.node_cap) {
        aborted_ = true;
        return false;
      }
      assignment_[v] = c;
      assigned_[v] = true;
      bool ok = true;
      for (std::size_t e : checks_[step])
        if (!satisfied(equations_[e])) {
          ok = false;
          break;
        }
      if (ok) {
        const int u = unary(v, c);
        ok = u != 0;
        uncertain_[v] = u == 2;
      }
      if (ok && descend(step + 1)) return true;
      assigned_[v] = false;
      if (aborted_) return false;
    }
    return false;
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const FilteredK& A_;
  const FilteredK& B_;
  const std::vector<std::size_t>& h_;
  const CompareOptions& opts_;
  std::size_t& nodes_;
  std::vector<std::size_t> target_;
  std::map<IntVector, IsoList> iso_cache_;
  std::vector<Variable> vars_;
  std::vector<std::size_t> var_of_;
  std::vector<Equation> equations_;
  std::vector<std::size_t> order_, position_;
  std::vector<std::vector<std::size_t>> checks_;
  std::vector<std::size_t> assignment_;
  std::vector<bool> assigned_, uncertain_;
  bool exhaustive_ = true;
  bool aborted_ = false;
  bool saw_uncertain_ = false;
};

}  // namespace detail

/// First locally closed set whose groups differ under h, or nothing.
inline std::optional<std::string> pointwise_mismatch(const FilteredK& A, const FilteredK& B,
                                                     const std::vector<std::size_t>& h) {
  for (std::size_t i = 0; i < A.lcs.size(); ++i) {
    const PointSet image = map_points(h, A.lcs[i].points);
    const auto it = B.lc_index.find(image);
    if (it == B.lc_index.end()) return "image of " + format_points(A.lcs[i].points) + " is not locally closed";
    const KData& a = A.kmap[i];
    const KData& b = B.kmap[it->second];
    if (a.K0.factors != b.K0.factors)
      return "K0 at " + format_points(A.lcs[i].points) + ": " + a.K0.describe() + " vs " + b.K0.describe();
    if (a.K1.factors != b.K1.factors)
      return "K1 at " + format_points(A.lcs[i].points) + ": " + a.K1.describe() + " vs " + b.K1.describe();
  }
  return std::nullopt;
}

inline CompareVerdict compare(const FilteredK& A, const FilteredK& B, const CompareOptions& opts = {}) {
  if (opts.budget < 1) throw PreconditionError("budget must be at least 1");
  CompareVerdict verdict;
  if (A.space.size() != B.space.size()) {
    verdict.outcome = Outcome::Distinguished;
    verdict.reason = "spectra have " + std::to_string(A.space.size()) + " and " + std::to_string(B.space.size()) + " points";
    return verdict;
  }
  const auto homeos = poset_isomorphisms(A.space, B.space);
  verdict.homeomorphisms = homeos.size();
  if (homeos.empty()) {
    verdict.outcome = Outcome::Distinguished;
    verdict.reason = "no homeomorphism between the spectra";
    return verdict;
  }

  std::vector<std::size_t> viable;
  std::string first_mismatch;
  for (std::size_t k = 0; k < homeos.size(); ++k) {
    if (auto m = pointwise_mismatch(A, B, homeos[k])) {
      if (first_mismatch.empty()) first_mismatch = *m;
    } else {
      viable.push_back(k);
    }
  }
  if (viable.empty()) {
    verdict.outcome = Outcome::Distinguished;
    verdict.reason = "every homeomorphism fails a pointwise check; under homeomorphism #0: " + first_mismatch;
    return verdict;
  }

  bool complete = true;
  bool inconclusive_cone = false;
  for (std::size_t k : viable) {
    detail::FamilySearch search(A, B, homeos[k], opts, verdict.nodes);
    const auto result = search.run();
    if (result == detail::FamilySearch::Result::Found) {
      verdict.outcome = Outcome::Compatible;
      verdict.reason = "compatible family found under homeomorphism #" + std::to_string(k);
      verdict.witness = search.witness();
      return verdict;
    }
    if (result == detail::FamilySearch::Result::Incomplete) complete = false;
    if (search.cone_inconclusive()) inconclusive_cone = true;
    if (verdict.nodes > opts.node_cap) break;
  }
  if (complete) {
    verdict.outcome = Outcome::Distinguished;
    verdict.reason = "exhaustive search found no compatible family under any of " + std::to_string(viable.size()) +
                     " viable homeomorphisms";
    return verdict;
  }
  verdict.outcome = Outcome::Unknown;
  std::ostringstream os;
  os << "search incomplete after " << verdict.nodes << " nodes (budget " << opts.budget << ")";
  if (inconclusive_cone) os << "; some positive-cone checks were inconclusive";
  verdict.reason = os.str();
  return verdict;
}

/// Re-checks a COMPATIBLE witness from scratch.
inline Report verify_witness(const FilteredK& A, const FilteredK& B, const Witness& w, const CompareOptions& opts = {}) {
  Report r{"witness"};
  const std::size_t n = A.space.size();
  r.expect(w.point_map.size() == n && B.space.size() == n, "point map has the wrong size");
  if (!r.ok()) return r;
  {
    std::vector<std::size_t> sorted = w.point_map;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) r.expect(sorted[i] == i, "point map is not a bijection");
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      r.expect(A.space.specializes(p, q) == B.space.specializes(w.point_map[p], w.point_map[q]),
               "point map does not preserve specialization");
  if (!r.ok()) return r;
  r.expect(w.alpha0.size() == A.lcs.size() && w.alpha1.size() == A.lcs.size(), "wrong number of group maps");
  if (!r.ok()) return r;

  std::vector<std::size_t> target(A.lcs.size());
  for (std::size_t i = 0; i < A.lcs.size(); ++i) {
    const auto it = B.lc_index.find(map_points(w.point_map, A.lcs[i].points));
    r.expect(it != B.lc_index.end(), "image of a locally closed set is not locally closed");
    if (it == B.lc_index.end()) return r;
    target[i] = it->second;
    const KData& a = A.kmap[i];
    const KData& b = B.kmap[target[i]];
    const std::string at = " at " + format_points(A.lcs[i].points);
    r.expect(is_isomorphism(a.K0, b.K0, w.alpha0[i]), "alpha0 is not an isomorphism" + at);
    r.expect(is_isomorphism(a.K1, b.K1, w.alpha1[i]), "alpha1 is not an isomorphism" + at);
    if (!r.ok()) return r;
    const auto c = detail::order_preserving(a, b, w.alpha0[i], opts.cone_bound);
    r.expect(c.member && c.conclusive, "alpha0 is not (verifiably) an order isomorphism" + at);
  }
  if (opts.unital) {
    const KData& b = B.kmap[target[A.full]];
    IntVector diff = w.alpha0[A.full] * A.kmap[A.full].unit_class;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b.unit_class[i];
    r.expect(b.K0.is_zero(diff), "unit class not preserved");
  }
  for (const auto& s : A.sequences) {
    const auto& t = B.sequences.at(B.sequence_index.at({target[s.sub], target[s.quot]}));
    const auto& kb = B.kmap;
    const std::string at = " for " + format_points(A.lcs[s.sub].points) + " -> " + format_points(A.lcs[s.all].points);
    r.expect(maps_equal(kb[t.all].K0, w.alpha0[s.all] * s.iota0, t.iota0 * w.alpha0[s.sub]), "iota0 square fails" + at);
    r.expect(maps_equal(kb[t.quot].K0, w.alpha0[s.quot] * s.pi0, t.pi0 * w.alpha0[s.all]), "pi0 square fails" + at);
    r.expect(maps_equal(kb[t.all].K1, w.alpha1[s.all] * s.iota1, t.iota1 * w.alpha1[s.sub]), "iota1 square fails" + at);
    r.expect(maps_equal(kb[t.quot].K1, w.alpha1[s.quot] * s.pi1, t.pi1 * w.alpha1[s.all]), "pi1 square fails" + at);
    r.expect(maps_equal(kb[t.sub].K0, w.alpha0[s.sub] * s.partial, t.partial * w.alpha1[s.quot]),
             "boundary square fails" + at);
    r.expect(maps_equal(kb[t.sub].K1, w.alpha1[s.sub] * s.delta, t.delta * w.alpha0[s.quot]), "delta square fails" + at);
  }
  return r;
}

}  // namespace fkgraph
