#pragma once

#include <optional>

#include "fkgraph/int_matrix.hpp"

namespace fkgraph {

/// P * M * Q == S with P, Q unimodular and S diagonal, s_0 | s_1 | ... | s_{r-1}
/// positive and all later diagonal entries zero. The inverses are tracked
/// alongside so that no inversion is needed afterwards.
struct SmithForm {
  IntMatrix S;
  IntMatrix P, P_inv;
  IntMatrix Q, Q_inv;
  std::size_t rank = 0;

  /// min(rows, cols) diagonal entries.
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : S(m), P(IntMatrix::identity(m.rows())), P_inv(P), Q(IntMatrix::identity(m.cols())), Q_inv(Q) {}

  SmithForm run() {
    const std::size_t limit = std::min(S.rows(), S.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      if (!move_min_to(t, /*whole_block=*/true)) break;
      while (true) {
        if (!clear_cross(t)) {
          move_min_to(t, /*whole_block=*/false);
          continue;
        }
        if (!fix_divisibility(t)) break;
      }
      if (S(t, t) < 0) negate_row(t);
    }
    return SmithForm{std::move(S), std::move(P), std::move(P_inv), std::move(Q), std::move(Q_inv), t};
  }

 private:
  // Each elementary operation is mirrored on the transform and its inverse.
  void swap_rows(std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    P.swap_rows(a, b);
    P_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    Q.swap_cols(a, b);
    Q_inv.swap_rows(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const BigInt& k) {
    S.add_row(dst, src, k);
    P.add_row(dst, src, k);
    P_inv.add_col(src, dst, -k);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& k) {
    S.add_col(dst, src, k);
    Q.add_col(dst, src, k);
    Q_inv.add_row(src, dst, -k);
  }
  void negate_row(std::size_t i) {
    S.negate_row(i);
    P.negate_row(i);
    P_inv.negate_col(i);
  }

  /// Moves the nonzero entry of least absolute value to (t, t), searching the
  /// whole trailing block or only row t and column t. False if all zero.
  bool move_min_to(std::size_t t, bool whole_block) {
    std::size_t bi = 0, bj = 0;
    BigInt best = 0;
    auto consider = [&](std::size_t i, std::size_t j) {
      const BigInt& x = S(i, j);
      if (x == 0) return;
      const BigInt a = abs(x);
      if (best == 0 || a < best) {
        best = a;
        bi = i;
        bj = j;
      }
    };
    if (whole_block) {
      for (std::size_t i = t; i < S.rows(); ++i)
        for (std::size_t j = t; j < S.cols(); ++j) consider(i, j);
    } else {
      consider(t, t);
      for (std::size_t i = t + 1; i < S.rows(); ++i) consider(i, t);
      for (std::size_t j = t + 1; j < S.cols(); ++j) consider(t, j);
    }
    if (best == 0) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  /// Reduces column t below and row t right of the pivot. True if both end up zero.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    const BigInt pivot = S(t, t);
    for (std::size_t i = t + 1; i < S.rows(); ++i) {
      if (S(i, t) == 0) continue;
      add_row(i, t, -(S(i, t) / pivot));
      if (S(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < S.cols(); ++j) {
      if (S(t, j) == 0) continue;
      add_col(j, t, -(S(t, j) / pivot));
      if (S(t, j) != 0) clean = false;
    }
    return clean;
  }

  /// If some trailing entry is not a multiple of the pivot, folds its row into
  /// row t and returns true (the cross must be cleared again).
  bool fix_divisibility(std::size_t t) {
    const BigInt pivot = S(t, t);
    for (std::size_t i = t + 1; i < S.rows(); ++i)
      for (std::size_t j = t + 1; j < S.cols(); ++j)
        if (S(i, j) % pivot != 0) {
          add_row(t, i, 1);
          return true;
        }
    return false;
  }

  IntMatrix S, P, P_inv, Q, Q_inv;
};

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& m) { return detail::SmithReducer(m).run(); }

/// Some integer x with A * x == b, or nothing if none exists.
inline std::optional<IntVector> solve_integer(const SmithForm& f, const IntVector& b) {
  if (b.size() != f.S.rows()) throw PreconditionError("solve_integer: dimension mismatch");
  const IntVector pb = f.P * b;
  IntVector y(f.S.cols());
  for (std::size_t i = 0; i < pb.size(); ++i) {
    if (i < f.rank) {
      if (pb[i] % f.S(i, i) != 0) return std::nullopt;
      y[i] = pb[i] / f.S(i, i);
    } else if (pb[i] != 0) {
      return std::nullopt;
    }
  }
  return f.Q * y;
}

inline std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b) {
  return solve_integer(smith_normal_form(A), b);
}

/// Basis of {x : M x = 0} as the columns of a cols x (cols - rank) matrix.
inline IntMatrix kernel_basis(const SmithForm& f) { return f.Q.block(0, f.Q.rows(), f.rank, f.Q.cols()); }
inline IntMatrix kernel_basis(const IntMatrix& m) { return kernel_basis(smith_normal_form(m)); }

}  // namespace fkgraph
