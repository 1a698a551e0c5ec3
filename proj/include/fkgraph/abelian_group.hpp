#pragma once

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fkgraph/smith.hpp"

namespace fkgraph {

/// Finitely generated abelian group Z/d_0 + ... + Z/d_{k-1} realised inside an
/// ambient lattice Z^m. Torsion factors (d > 1) come first in divisibility
/// order, free factors (d == 0) last; unit factors are dropped.
///
/// `project` (k x m) sends ambient vectors to canonical coordinates and
/// `lift` (m x k) sends canonical coordinates back to ambient representatives.
/// For a cokernel the ambient space is the target of the presented map; for a
/// kernel it is the domain and `project` is a left inverse of `lift`.
struct FgAbGroup {
  IntVector factors;
  IntMatrix project;
  IntMatrix lift;

  std::size_t dim() const { return factors.size(); }
  std::size_t ambient_dim() const { return lift.rows(); }
  bool trivial() const { return factors.empty(); }

  std::size_t rank() const {
    return static_cast<std::size_t>(std::count(factors.begin(), factors.end(), BigInt(0)));
  }
  std::size_t torsion_count() const { return dim() - rank(); }
  IntVector torsion() const { return IntVector(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(torsion_count())); }

  IntVector reduce(IntVector x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_floor(x[i], factors[i]);
    return x;
  }
  /// Canonical coordinates of an ambient vector.
  IntVector coords(const IntVector& ambient) const { return reduce(project * ambient); }
  IntVector zero() const { return IntVector(dim()); }

  bool is_zero(const IntVector& x) const {
    const auto r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](const BigInt& v) { return v == 0; });
  }

  /// e.g. "Z/2 + Z^2", "0"
  std::string describe() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion()) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    if (const auto r = rank(); r > 0) {
      os << (first ? "" : " + ") << "Z";
      if (r > 1) os << '^' << r;
    }
    return os.str();
  }
};

/// Z^m / M Z^n for an m x n matrix M.
inline FgAbGroup cokernel(const IntMatrix& M) {
  const SmithForm f = smith_normal_form(M);
  const std::size_t m = M.rows();
  std::vector<std::size_t> keep;
  FgAbGroup G;
  for (std::size_t i = 0; i < m; ++i) {
    const BigInt d = i < f.rank ? f.S(i, i) : BigInt(0);
    if (d == 1) continue;
    keep.push_back(i);
    G.factors.push_back(d);
  }
  G.project = IntMatrix(keep.size(), m);
  G.lift = IntMatrix(m, keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t j = 0; j < m; ++j) {
      G.project(a, j) = f.P(keep[a], j);
      G.lift(j, a) = f.P_inv(j, keep[a]);
    }
  return G;
}

/// {x in Z^n : M x = 0} as a free group with basis `lift`.
inline FgAbGroup kernel_group(const IntMatrix& M) {
  const SmithForm f = smith_normal_form(M);
  const std::size_t n = M.cols();
  FgAbGroup G;
  G.factors.assign(n - f.rank, BigInt(0));
  G.lift = kernel_basis(f);
  G.project = f.Q_inv.block(f.rank, n, 0, n);
  return G;
}

// ---------------------------------------------------------------------------
// Homomorphisms, as integer matrices on canonical coordinates (target x source)

/// Reduces each row modulo the corresponding factor of `target`.
inline IntMatrix reduce_map(const FgAbGroup& target, IntMatrix X) {
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j) X(i, j) = mod_floor(X(i, j), target.factors[i]);
  return X;
}

/// The map on canonical coordinates induced by an ambient integer matrix.
inline IntMatrix induced_map(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& ambient) {
  return reduce_map(target, target.project * ambient * source.lift);
}

inline IntMatrix zero_map(const FgAbGroup& source, const FgAbGroup& target) {
  return IntMatrix(target.dim(), source.dim());
}

inline IntMatrix identity_map(const FgAbGroup& G) { return IntMatrix::identity(G.dim()); }

inline IntMatrix compose(const FgAbGroup& target, const IntMatrix& outer, const IntMatrix& inner) {
  return reduce_map(target, outer * inner);
}

inline bool maps_equal(const FgAbGroup& target, const IntMatrix& X, const IntMatrix& Y) {
  return reduce_map(target, X - Y).is_zero();
}

/// X respects the relations of `source` (d_j * column j vanishes in target).
inline bool is_homomorphism(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& X) {
  if (X.rows() != target.dim() || X.cols() != source.dim()) return false;
  for (std::size_t j = 0; j < source.dim(); ++j) {
    IntVector col = X.column(j);
    for (auto& c : col) c *= source.factors[j];
    if (!target.is_zero(col)) return false;
  }
  return true;
}

/// diag(factors) as a square matrix: generators of the relation lattice.
inline IntMatrix relation_matrix(const FgAbGroup& G) {
  IntMatrix R(G.dim(), G.dim());
  for (std::size_t i = 0; i < G.dim(); ++i) R(i, i) = G.factors[i];
  return R;
}

/// x lies in the subgroup generated by `gens` (columns, canonical coordinates).
inline bool in_subgroup(const FgAbGroup& G, const IntMatrix& gens, const IntVector& x) {
  if (G.dim() == 0) return true;
  return solve_integer(gens.hconcat(relation_matrix(G)), x).has_value();
}

inline bool is_surjective(const FgAbGroup& target, const IntMatrix& X) {
  if (target.dim() == 0) return true;
  const SmithForm f = smith_normal_form(X.hconcat(relation_matrix(target)));
  if (f.rank != target.dim()) return false;
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.S(i, i) != 1) return false;
  return true;
}

/// Generators (columns) of the preimage in Z^k of ker X, where k = source.dim().
inline IntMatrix kernel_generators(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& X) {
  IntMatrix R = relation_matrix(target);
  for (std::size_t i = 0; i < R.rows(); ++i) R(i, i) = -R(i, i);
  const IntMatrix K = kernel_basis(X.hconcat(R));
  return K.block(0, source.dim(), 0, K.cols());
}

/// Source and target are isomorphic and X is an isomorphism between them.
inline bool is_isomorphism(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& X) {
  // Finitely generated abelian groups are Hopfian: between isomorphic groups
  // every surjection is an isomorphism.
  return source.factors == target.factors && is_homomorphism(source, target, X) && is_surjective(target, X);
}

/// A -f-> B -g-> C is exact at B. Returns an empty string on success,
/// otherwise a description of the failure.
inline std::string exactness_defect(const FgAbGroup& A, const FgAbGroup& B, const FgAbGroup& C, const IntMatrix& f,
                                    const IntMatrix& g) {
  if (!compose(C, g, f).is_zero()) return "composite is nonzero";
  const IntMatrix ker = kernel_generators(B, C, g);
  const IntMatrix image = f.hconcat(relation_matrix(B));
  (void)A;
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    if (B.dim() == 0) break;
    if (!solve_integer(image, ker.column(j))) {
      std::ostringstream os;
      os << "kernel element " << IntMatrix::from_columns(B.dim(), {ker.column(j)}).transpose() << " not in image";
      return os.str();
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Isomorphism enumeration

/// Every isomorphism G -> H in canonical coordinates whose free-to-free block
/// has entries in [-budget, budget]. `exhaustive` is true when that bound
/// loses nothing (free rank <= 1) and the list was not truncated.
struct IsoList {
  std::vector<IntMatrix> isos;
  bool exhaustive = true;
};

namespace detail {

/// Determinant of a small int64 matrix by cofactor expansion on the first row.
inline long long small_det(const std::vector<long long>& a, std::size_t n) {
  if (n == 0) return 1;
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  long long det = 0;
  std::vector<long long> minor((n - 1) * (n - 1));
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c] == 0) continue;
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor[(i - 1) * (n - 1) + k++] = a[i * n + j];
    }
    const long long sub = small_det(minor, n - 1);
    det += (c % 2 ? -1 : 1) * a[c] * sub;
  }
  return det;
}

/// GL(r, Z) matrices with entries in [-budget, budget], identity first.
inline std::vector<std::vector<long long>> bounded_gl(std::size_t r, long long budget, std::size_t cap, bool& truncated) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> id(r * r, 0);
  for (std::size_t i = 0; i < r; ++i) id[i * r + i] = 1;
  out.push_back(id);
  if (r == 0) return out;
  std::vector<long long> a(r * r, -budget);
  while (true) {
    const long long d = small_det(a, r);
    if ((d == 1 || d == -1) && a != id) {
      if (out.size() >= cap) {
        truncated = true;
        return out;
      }
      out.push_back(a);
    }
    std::size_t k = 0;
    while (k < a.size() && a[k] == budget) a[k++] = -budget;
    if (k == a.size()) break;
    ++a[k];
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kDefaultIsoCap = 200000;

inline IsoList group_isos(const FgAbGroup& G, const FgAbGroup& H, long long budget, std::size_t cap = kDefaultIsoCap) {
  if (budget < 1) throw PreconditionError("group_isos: budget must be at least 1");
  IsoList result;
  if (G.factors != H.factors) return result;
  const std::size_t k = G.dim();
  const std::size_t t = G.torsion_count();
  const std::size_t r = k - t;
  const IntVector& d = G.factors;

  // Torsion block: entry (i, j) is a homomorphism Z/d_j -> Z/d_i, i.e. a
  // residue x mod d_i with d_j * x == 0 mod d_i.
  std::vector<std::vector<BigInt>> allowed(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      for (BigInt x = 0; x < d[i]; ++x)
        if ((d[j] * x) % d[i] == 0) allowed[i * t + j].push_back(x);

  FgAbGroup tors;
  tors.factors = G.torsion();
  std::vector<IntMatrix> torsion_autos;
  {
    std::vector<std::size_t> pos(t * t, 0);
    while (true) {
      IntMatrix T(t, t);
      for (std::size_t e = 0; e < t * t; ++e) T(e / t, e % t) = allowed[e][pos[e]];
      if (is_surjective(tors, T)) {
        if (torsion_autos.size() >= cap) {
          result.exhaustive = false;
          break;
        }
        torsion_autos.push_back(std::move(T));
      }
      std::size_t e = 0;
      while (e < pos.size() && pos[e] + 1 == allowed[e].size()) pos[e++] = 0;
      if (e == pos.size()) break;
      ++pos[e];
    }
    // Identity first.
    auto id = std::find(torsion_autos.begin(), torsion_autos.end(), IntMatrix::identity(t));
    if (id != torsion_autos.end()) std::rotate(torsion_autos.begin(), id, id + 1);
  }

  bool truncated = false;
  const auto free_autos = detail::bounded_gl(r, budget, cap, truncated);
  if (truncated || r > 1) result.exhaustive = false;

  // Free-to-torsion block: arbitrary residues.
  std::vector<IntMatrix> mixed;
  {
    std::vector<BigInt> pos(t * r, 0);
    while (true) {
      IntMatrix X(t, r);
      for (std::size_t e = 0; e < t * r; ++e) X(e / r, e % r) = pos[e];
      if (mixed.size() >= cap) {
        result.exhaustive = false;
        break;
      }
      mixed.push_back(std::move(X));
      std::size_t e = 0;
      while (e < pos.size() && pos[e] + 1 == d[e / r]) pos[e++] = 0;
      if (e == pos.size()) break;
      ++pos[e];
    }
  }

  for (const auto& F : free_autos)
    for (const auto& T : torsion_autos)
      for (const auto& X : mixed) {
        if (result.isos.size() >= cap) {
          result.exhaustive = false;
          return result;
        }
        IntMatrix M(k, k);
        for (std::size_t i = 0; i < t; ++i) {
          for (std::size_t j = 0; j < t; ++j) M(i, j) = T(i, j);
          for (std::size_t j = 0; j < r; ++j) M(i, t + j) = X(i, j);
        }
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) M(t + i, t + j) = F[i * r + j];
        result.isos.push_back(std::move(M));
      }
  return result;
}

}  // namespace fkgraph
