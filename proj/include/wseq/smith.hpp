#pragma once

// Smith normal form over the integers and the lattice routines built on it.
// Everything here is templated on the scalar so the same code runs over
// Integer (library default) and machine integers (tests, quick checks).

#include "wseq/integer.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace wseq {

/// U * M * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
/// The inverses of U and V are maintained alongside so callers can move
/// between the original and the diagonal bases without solving.
template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> U, D, V;
  Matrix<Scalar> U_inv, V_inv;
  Index rank = 0;

  Scalar diag(Index i) const {
    return i < std::min(D.rows(), D.cols()) ? D(i, i) : Scalar(0);
  }
};

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

// Quotient rounded to the nearest integer; keeps remainders at most |b|/2.
template <typename Scalar>
Scalar nearest_quotient(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  Scalar r = a - q * b;
  Scalar twice = r * 2;
  if (abs_value(twice) > abs_value(b)) {
    if ((r < 0) == (b < 0))
      q += 1;
    else
      q -= 1;
  }
  return q;
}

template <typename Scalar>
class SmithReducer {
 public:
  explicit SmithReducer(const Matrix<Scalar>& m)
      : A(m),
        U(Matrix<Scalar>::Identity(m.rows(), m.rows())),
        U_inv(U),
        V(Matrix<Scalar>::Identity(m.cols(), m.cols())),
        V_inv(V) {}

  SmithForm<Scalar> run() {
    const Index rows = A.rows(), cols = A.cols();
    Index t = 0;
    for (; t < std::min(rows, cols); ++t) {
      if (!move_smallest_to(t, t)) break;
      for (;;) {
        if (!clear_column(t) || !clear_row(t)) continue;
        if (fix_divisibility(t)) continue;
        break;
      }
      if (A(t, t) < 0) negate_row(t);
    }
    SmithForm<Scalar> out;
    out.rank = t;
    out.D = std::move(A);
    out.U = std::move(U);
    out.U_inv = std::move(U_inv);
    out.V = std::move(V);
    out.V_inv = std::move(V_inv);
    return out;
  }

 private:
  Matrix<Scalar> A, U, U_inv, V, V_inv;

  // Row ops act on A and U; U_inv receives the inverse column op.
  void swap_rows(Index i, Index j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    U.row(i).swap(U.row(j));
    U_inv.col(i).swap(U_inv.col(j));
  }
  void swap_cols(Index i, Index j) {
    if (i == j) return;
    A.col(i).swap(A.col(j));
    V.col(i).swap(V.col(j));
    V_inv.row(i).swap(V_inv.row(j));
  }
  // row_i -= q * row_t
  void sub_row(Index i, Index t, const Scalar& q) {
    if (q == 0) return;
    A.row(i) -= q * A.row(t);
    U.row(i) -= q * U.row(t);
    U_inv.col(t) += q * U_inv.col(i);
  }
  // col_j -= q * col_t
  void sub_col(Index j, Index t, const Scalar& q) {
    if (q == 0) return;
    A.col(j) -= q * A.col(t);
    V.col(j) -= q * V.col(t);
    V_inv.row(t) += q * V_inv.row(j);
  }
  void negate_row(Index t) {
    A.row(t) = -A.row(t);
    U.row(t) = -U.row(t);
    U_inv.col(t) = -U_inv.col(t);
  }

  bool move_smallest_to(Index r0, Index c0) {
    Index bi = -1, bj = -1;
    Scalar best = 0;
    for (Index j = c0; j < A.cols(); ++j)
      for (Index i = r0; i < A.rows(); ++i) {
        if (A(i, j) == 0) continue;
        Scalar a = abs_value<Scalar>(A(i, j));
        if (bi < 0 || a < best) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) return false;
    swap_rows(r0, bi);
    swap_cols(c0, bj);
    return true;
  }

  // Returns true when the column below the pivot is zero after reduction.
  bool clear_column(Index t) {
    bool clean = true;
    for (Index i = t + 1; i < A.rows(); ++i) {
      if (A(i, t) == 0) continue;
      sub_row(i, t, nearest_quotient<Scalar>(A(i, t), A(t, t)));
      if (A(i, t) != 0) clean = false;
    }
    if (!clean) repivot_column(t);
    return clean;
  }

  bool clear_row(Index t) {
    bool clean = true;
    for (Index j = t + 1; j < A.cols(); ++j) {
      if (A(t, j) == 0) continue;
      sub_col(j, t, nearest_quotient<Scalar>(A(t, j), A(t, t)));
      if (A(t, j) != 0) clean = false;
    }
    if (!clean) repivot_row(t);
    return clean;
  }

  void repivot_column(Index t) {
    Index bi = t;
    for (Index i = t + 1; i < A.rows(); ++i)
      if (A(i, t) != 0 && abs_value<Scalar>(A(i, t)) < abs_value<Scalar>(A(bi, t))) bi = i;
    swap_rows(t, bi);
  }

  void repivot_row(Index t) {
    Index bj = t;
    for (Index j = t + 1; j < A.cols(); ++j)
      if (A(t, j) != 0 && abs_value<Scalar>(A(t, j)) < abs_value<Scalar>(A(t, bj))) bj = j;
    swap_cols(t, bj);
  }

  // If some trailing entry is not divisible by the pivot, fold its row into
  // the pivot row so the next column pass produces a smaller pivot.
  bool fix_divisibility(Index t) {
    for (Index i = t + 1; i < A.rows(); ++i)
      for (Index j = t + 1; j < A.cols(); ++j)
        if (A(i, j) % A(t, t) != 0) {
          sub_row(t, i, Scalar(-1));
          return true;
        }
    return false;
  }
};

}  // namespace detail

/// Smith normal form with smallest-absolute-value pivoting. Deterministic.
template <typename Scalar>
SmithForm<Scalar> smith_normal_form(const Matrix<Scalar>& m) {
  return detail::SmithReducer<Scalar>(m).run();
}

/// Integer solution x of M x = b, or nothing when b is outside the column
/// lattice of M.
template <typename Scalar>
std::optional<Vector<Scalar>> solve_linear(const SmithForm<Scalar>& snf,
                                           const Vector<Scalar>& b) {
  const Index rows = snf.D.rows(), cols = snf.D.cols();
  if (b.size() != rows) throw DomainError("solve_linear: right-hand side has wrong length");
  Vector<Scalar> ub = rows == 0 ? Vector<Scalar>(Vector<Scalar>::Zero(0)) : Vector<Scalar>(snf.U * b);
  Vector<Scalar> y = Vector<Scalar>::Zero(cols);
  for (Index i = 0; i < rows; ++i) {
    if (i < snf.rank) {
      if (ub(i) % snf.D(i, i) != 0) return std::nullopt;
      y(i) = ub(i) / snf.D(i, i);
    } else if (ub(i) != 0) {
      return std::nullopt;
    }
  }
  if (cols == 0) return Vector<Scalar>(Vector<Scalar>::Zero(0));
  return Vector<Scalar>(snf.V * y);
}

template <typename Scalar>
std::optional<Vector<Scalar>> solve_linear(const Matrix<Scalar>& m, const Vector<Scalar>& b) {
  return solve_linear(smith_normal_form(m), b);
}

/// Basis (as columns) of the integer kernel { x : M x = 0 }. Saturated.
template <typename Scalar>
Matrix<Scalar> nullspace_basis(const Matrix<Scalar>& m) {
  if (m.rows() == 0) return Matrix<Scalar>::Identity(m.cols(), m.cols());
  auto snf = smith_normal_form(m);
  return snf.V.rightCols(m.cols() - snf.rank);
}

/// Basis (as columns) of the lattice spanned by the columns of G.
template <typename Scalar>
Matrix<Scalar> column_lattice_basis(const Matrix<Scalar>& g) {
  if (g.cols() == 0 || g.rows() == 0) return Matrix<Scalar>::Zero(g.rows(), 0);
  auto snf = smith_normal_form(g);
  Matrix<Scalar> out(g.rows(), snf.rank);
  for (Index i = 0; i < snf.rank; ++i) out.col(i) = snf.U_inv.col(i) * snf.D(i, i);
  return out;
}

/// Coordinates with respect to a full-column-rank lattice basis B.
template <typename Scalar>
class LatticeCoordinates {
 public:
  LatticeCoordinates() = default;
  explicit LatticeCoordinates(Matrix<Scalar> basis)
      : basis_(std::move(basis)), snf_(smith_normal_form(basis_)) {
    if (snf_.rank != basis_.cols()) throw DomainError("lattice basis is not linearly independent");
  }

  const Matrix<Scalar>& basis() const { return basis_; }
  Index rank() const { return basis_.cols(); }
  Index ambient_rank() const { return basis_.rows(); }

  std::optional<Vector<Scalar>> coords(const Vector<Scalar>& v) const { return solve_linear(snf_, v); }

  bool contains(const Vector<Scalar>& v) const { return coords(v).has_value(); }

 private:
  Matrix<Scalar> basis_;
  SmithForm<Scalar> snf_;
};

/// Determinant by fraction-free (Bareiss) elimination; exact for integers.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> a) {
  const Index n = a.rows();
  if (n != a.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Scalar(0);
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace wseq
