#pragma once

// K-theory of gauge subquotients of a row-finite graph algebra.
//
// For the subquotient on vertex set D, with B the |D| x |reg(D)| matrix
// B[w][v] = #edges(v -> w) - [v == w]:
//   K0 = coker B   (ambient Z^D, positive cone generated by the vertex classes)
//   K1 = ker B     (ambient Z^reg(D), torsion free)

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "fkgraph/abelian_group.hpp"
#include "fkgraph/graph.hpp"
#include "fkgraph/spectrum.hpp"

namespace fkgraph {

struct KData {
  VertexSet D;        ///< vertices of the subquotient, in graph order
  VertexSet regular;  ///< regular vertices of the subquotient graph
  IntMatrix B;
  FgAbGroup K0;
  FgAbGroup K1;
  std::vector<IntVector> cone_generators;  ///< class of each vertex of D, in order
  IntVector unit_class;                    ///< sum of all vertex classes

  /// Position of graph vertex v among D (or among the regular vertices).
  static std::size_t position(VertexSet set, std::size_t v) {
    return VertexSet(set.mask() & ((std::uint64_t{1} << v) - 1)).size();
  }
};

/// K-data of the restriction of g to D. D must be the difference of two
/// nested hereditary saturated sets; callers guarantee this.
inline KData k_data_for(const Graph& g, VertexSet D) {
  if (!g.row_finite()) throw PreconditionError("K-theory requires a row-finite graph");
  check_subset(g, D);
  const Graph sub = induced_subgraph(g, D);
  const auto verts = D.elements();
  KData k;
  k.D = D;
  std::vector<std::size_t> reg_local;
  for (std::size_t a = 0; a < verts.size(); ++a)
    if (sub.is_regular(a)) {
      reg_local.push_back(a);
      k.regular.insert(verts[a]);
    }
  k.B = IntMatrix(verts.size(), reg_local.size());
  for (std::size_t c = 0; c < reg_local.size(); ++c) {
    const std::size_t v = reg_local[c];
    for (std::size_t w = 0; w < verts.size(); ++w) {
      BigInt entry(sub.mult(v, w).count());
      if (v == w) entry -= 1;
      k.B(w, c) = entry;
    }
  }
  k.K0 = cokernel(k.B);
  k.K1 = kernel_group(k.B);
  k.unit_class = k.K0.zero();
  for (std::size_t a = 0; a < verts.size(); ++a) {
    IntVector e(verts.size());
    e[a] = 1;
    k.cone_generators.push_back(k.K0.coords(e));
    for (std::size_t i = 0; i < k.unit_class.size(); ++i) k.unit_class[i] += k.cone_generators.back()[i];
  }
  k.unit_class = k.K0.reduce(k.unit_class);
  return k;
}

/// K-data of the gauge subquotient over a locally closed set of g's spectrum.
inline KData k_data(const Graph& g, const SpectrumSpace& sp, const LocallyClosedSet& Y) {
  const auto& L = sp.lattice();
  if (Y.U >= L.size() || Y.V >= L.size() || !sp.is_locally_closed(Y.points) ||
      L.pair(Y.U).H - L.pair(Y.V).H != Y.D)
    throw PreconditionError("locally closed set does not belong to this spectrum");
  return k_data_for(g, Y.D);
}

// ---------------------------------------------------------------------------
// Positive cone

struct ConeResult {
  bool member = false;
  bool conclusive = true;
};

inline constexpr std::size_t kDefaultConeBound = 64;

namespace detail {

struct VecHash {
  std::size_t operator()(const IntVector& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 1000003u ^ std::hash<std::string>{}(x.str());
    return h;
  }
};

inline IntVector add(const FgAbGroup& G, const IntVector& a, const IntVector& b) {
  IntVector s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return G.reduce(std::move(s));
}

inline IntVector negate(const FgAbGroup& G, IntVector a) {
  for (auto& x : a) x = -x;
  return G.reduce(std::move(a));
}

/// Certificate that x is not a nonnegative combination of `gens`: a
/// functional f on the free part with f >= 0 on gens and f(x) < 0, recursing
/// onto the face f == 0 when f(x) == 0.
inline bool farkas_excludes(const FgAbGroup& G, const std::vector<IntVector>& gens, const IntVector& x, int depth) {
  if (depth < 0) return false;
  {
    IntMatrix cols = IntMatrix::from_columns(G.dim(), gens);
    if (gens.empty()) cols = IntMatrix(G.dim(), 0);
    if (!in_subgroup(G, cols, x)) return true;
  }
  const std::size_t t = G.torsion_count();
  const std::size_t r = G.rank();
  if (r == 0 || r > 6) return false;
  constexpr long long kRange = 2;
  std::vector<long long> f(r, -kRange);
  while (true) {
    if (std::any_of(f.begin(), f.end(), [](long long c) { return c != 0; })) {
      auto eval = [&](const IntVector& v) {
        BigInt s = 0;
        for (std::size_t i = 0; i < r; ++i) s += BigInt(f[i]) * v[t + i];
        return s;
      };
      bool nonneg = true;
      bool some_positive = false;
      for (const auto& gvec : gens) {
        const BigInt s = eval(gvec);
        if (s < 0) {
          nonneg = false;
          break;
        }
        if (s > 0) some_positive = true;
      }
      if (nonneg) {
        const BigInt fx = eval(x);
        if (fx < 0) return true;
        if (fx == 0 && some_positive) {
          std::vector<IntVector> face;
          for (const auto& gvec : gens)
            if (eval(gvec) == 0) face.push_back(gvec);
          if (farkas_excludes(G, face, x, depth - 1)) return true;
        }
      }
    }
    std::size_t k = 0;
    while (k < r && f[k] == kRange) f[k++] = -kRange;
    if (k == r) break;
    ++f[k];
  }
  return false;
}

}  // namespace detail

/// Decides whether x (canonical K0 coordinates of `G`) is a nonnegative
/// integer combination of `gens`. Searches combinations of total size up to
/// `bound`; "no" answers are conclusive only when backed by a certificate.
inline ConeResult cone_membership(const FgAbGroup& G, const std::vector<IntVector>& gens, const IntVector& x_raw,
                                  std::size_t bound = kDefaultConeBound) {
  const IntVector x = G.reduce(x_raw);
  if (G.is_zero(x)) return {true, true};

  std::vector<IntVector> nz;
  for (const auto& gvec : gens)
    if (!G.is_zero(gvec) && std::find(nz.begin(), nz.end(), G.reduce(gvec)) == nz.end()) nz.push_back(G.reduce(gvec));

  if (detail::farkas_excludes(G, nz, x, static_cast<int>(nz.size()))) return {false, true};

  // Breadth-first enumeration of sums of at most `bound` generators.
  constexpr std::size_t kStateCap = 200000;
  std::unordered_set<IntVector, detail::VecHash> seen{G.zero()};
  std::vector<IntVector> frontier{G.zero()};
  bool saturated = false;
  for (std::size_t level = 0; level < bound && !frontier.empty(); ++level) {
    std::vector<IntVector> next;
    for (const auto& s : frontier)
      for (const auto& gvec : nz) {
        IntVector y = detail::add(G, s, gvec);
        if (y == x) return {true, true};
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    if (seen.size() > kStateCap) break;
    frontier = std::move(next);
    if (frontier.empty()) saturated = true;
  }
  if (saturated) return {false, true};

  // If every generator has its negative in the monoid, the monoid is the
  // subgroup they generate, which already contains x (Farkas check passed).
  const bool group_like = std::all_of(nz.begin(), nz.end(), [&](const IntVector& gvec) {
    return seen.contains(detail::negate(G, gvec));
  });
  if (group_like) return {true, true};
  return {false, false};
}

inline ConeResult cone_contains(const KData& k, const IntVector& x, std::size_t bound = kDefaultConeBound) {
  return cone_membership(k.K0, k.cone_generators, x, bound);
}

// ---------------------------------------------------------------------------
// Six-term exact sequences

/// K(U2\U1) -> K(U3\U1) -> K(U3\U2) in degrees 0 and 1 with connecting maps.
/// `sub`, `all`, `quot` are the K-data of the three subquotients; the maps
/// are matrices on canonical coordinates.
struct SixTerm {
  KData sub, all, quot;
  IntMatrix iota0, pi0, delta;   // K0(sub)->K0(all), K0(all)->K0(quot), K0(quot)->K1(sub)
  IntMatrix iota1, pi1, partial; // K1(sub)->K1(all), K1(all)->K1(quot), K1(quot)->K0(sub)
};

/// Positions-based ambient matrix sending e_v (v in `from`) to e_v (v in `to`).
inline IntMatrix selection_matrix(VertexSet from, VertexSet to) {
  IntMatrix m(to.size(), from.size());
  for (std::size_t v : (from & to).elements()) m(KData::position(to, v), KData::position(from, v)) = 1;
  return m;
}

/// Exactness at all six positions; empty vector when exact.
inline std::vector<std::string> six_term_defects(const SixTerm& s) {
  std::vector<std::string> out;
  auto check = [&](const char* where, const FgAbGroup& A, const FgAbGroup& B, const FgAbGroup& C, const IntMatrix& f,
                   const IntMatrix& g) {
    if (auto d = exactness_defect(A, B, C, f, g); !d.empty()) out.push_back(std::string(where) + ": " + d);
  };
  check("K0(all)", s.sub.K0, s.all.K0, s.quot.K0, s.iota0, s.pi0);
  check("K0(quot)", s.all.K0, s.quot.K0, s.sub.K1, s.pi0, s.delta);
  check("K1(sub)", s.quot.K0, s.sub.K1, s.all.K1, s.delta, s.iota1);
  check("K1(all)", s.sub.K1, s.all.K1, s.quot.K1, s.iota1, s.pi1);
  check("K1(quot)", s.all.K1, s.quot.K1, s.sub.K0, s.pi1, s.partial);
  check("K0(sub)", s.quot.K1, s.sub.K0, s.all.K0, s.partial, s.iota0);
  return out;
}

/// The six-term sequence of the ideal D_sub inside D_all with quotient
/// D_quot = D_all \ D_sub. Throws InvariantViolation if it is not exact.
inline SixTerm six_term_for(const Graph& g, VertexSet D_sub, VertexSet D_quot) {
  SixTerm s;
  s.sub = k_data_for(g, D_sub);
  s.all = k_data_for(g, D_sub | D_quot);
  s.quot = k_data_for(g, D_quot);

  s.iota0 = induced_map(s.sub.K0, s.all.K0, selection_matrix(s.sub.D, s.all.D));
  s.pi0 = induced_map(s.all.K0, s.quot.K0, selection_matrix(s.all.D, s.quot.D));
  s.iota1 = induced_map(s.sub.K1, s.all.K1, selection_matrix(s.sub.regular, s.all.regular));
  s.pi1 = induced_map(s.all.K1, s.quot.K1, selection_matrix(s.all.regular, s.quot.regular));
  s.delta = zero_map(s.quot.K0, s.sub.K1);

  // Index map: the off-diagonal block C of B over D_all (rows D_sub, columns
  // regular vertices of D_quot) applied to kernel representatives.
  IntMatrix C(s.sub.D.size(), s.quot.regular.size());
  for (std::size_t v : s.quot.regular.elements())
    for (std::size_t w : s.sub.D.elements())
      C(KData::position(s.sub.D, w), KData::position(s.quot.regular, v)) = BigInt(g.mult(v, w).count());
  s.partial = induced_map(s.quot.K1, s.sub.K0, C);

  if (auto defects = six_term_defects(s); !defects.empty())
    throw InvariantViolation("six-term sequence not exact at " + defects.front());
  return s;
}

/// Six-term sequence for opens U1 <= U2 <= U3 (given as lattice indices).
inline SixTerm six_term(const Graph& g, const SpectrumSpace& sp, std::size_t U1, std::size_t U2, std::size_t U3) {
  const auto& L = sp.lattice();
  if (!(sp.opens()[U1].subset_of(sp.opens()[U2]) && sp.opens()[U2].subset_of(sp.opens()[U3])))
    throw PreconditionError("six_term requires U1 <= U2 <= U3");
  const VertexSet H1 = L.pair(U1).H, H2 = L.pair(U2).H, H3 = L.pair(U3).H;
  return six_term_for(g, H2 - H1, H3 - H2);
}

}  // namespace fkgraph
