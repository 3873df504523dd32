#pragma once

// Exact linear algebra over the coefficient ring: linear and bilinear maps on
// H^{a,b}, their flattening into unknown vectors, and reduced row echelon
// form / nullspace over fields.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "quatsuper/quaternion.hpp"

namespace quatsuper {

template <class Scalar>
using BilinValues = Eigen::Matrix<Scalar, 4, 16>;

/// Linear self-map of H^{a,b}: column q holds the coordinates of M(e_q).
template <ExactScalar Scalar>
class LinMap {
 public:
  LinMap(AlgebraPtr<Scalar> algebra, const Mat4<Scalar>& matrix) : algebra_(std::move(algebra)) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) matrix_(r, c) = ScalarRing<Scalar>::coerce(algebra_->ring(), matrix(r, c));
    }
  }

  static LinMap zero(AlgebraPtr<Scalar> algebra) {
    Mat4<Scalar> m = Mat4<Scalar>::Constant(algebra->zero());
    return LinMap(std::move(algebra), m);
  }

  static LinMap identity(AlgebraPtr<Scalar> algebra) {
    Mat4<Scalar> m = Mat4<Scalar>::Constant(algebra->zero());
    for (int p = 0; p < 4; ++p) m(p, p) = algebra->one();
    return LinMap(std::move(algebra), m);
  }

  const AlgebraPtr<Scalar>& algebra() const { return algebra_; }
  const Mat4<Scalar>& matrix() const { return matrix_; }
  /// 1-based entry access, (row, column) as in m_{rc}.
  const Scalar& entry(int row, int col) const { return matrix_(row - 1, col - 1); }

  bool is_zero() const {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (!quatsuper::is_zero(matrix_(r, c))) return false;
      }
    }
    return true;
  }

  friend bool operator==(const LinMap& x, const LinMap& y) {
    return x.algebra_->same_algebra(*y.algebra_) && coeff_equal(x.matrix_, y.matrix_);
  }

 private:
  AlgebraPtr<Scalar> algebra_;
  Mat4<Scalar> matrix_;
};

/// Bilinear map on H^{a,b} stored by its values on basis pairs:
/// column 4p+q of values() holds the coordinates of delta(e_p, e_q).
template <ExactScalar Scalar>
class BilinMap {
 public:
  BilinMap(AlgebraPtr<Scalar> algebra, const BilinValues<Scalar>& values) : algebra_(std::move(algebra)) {
    for (int c = 0; c < 16; ++c) {
      for (int r = 0; r < 4; ++r) values_(r, c) = ScalarRing<Scalar>::coerce(algebra_->ring(), values(r, c));
    }
  }

  static BilinMap zero(AlgebraPtr<Scalar> algebra) {
    BilinValues<Scalar> v = BilinValues<Scalar>::Constant(algebra->zero());
    return BilinMap(std::move(algebra), v);
  }

  const AlgebraPtr<Scalar>& algebra() const { return algebra_; }
  const BilinValues<Scalar>& values() const { return values_; }
  Vec4<Scalar> value(int p, int q) const { return values_.col(4 * p + q); }
  void set_value(int p, int q, const Vec4<Scalar>& v) {
    for (int r = 0; r < 4; ++r) values_(r, 4 * p + q) = ScalarRing<Scalar>::coerce(algebra_->ring(), v(r));
  }

  bool is_zero() const {
    for (int c = 0; c < 16; ++c) {
      for (int r = 0; r < 4; ++r) {
        if (!quatsuper::is_zero(values_(r, c))) return false;
      }
    }
    return true;
  }

  friend bool operator==(const BilinMap& x, const BilinMap& y) {
    return x.algebra_->same_algebra(*y.algebra_) && coeff_equal(x.values_, y.values_);
  }

 private:
  AlgebraPtr<Scalar> algebra_;
  BilinValues<Scalar> values_;
};

template <ExactScalar Scalar>
Quaternion<Scalar> apply(const LinMap<Scalar>& m, const Quaternion<Scalar>& x) {
  require_same_algebra(*m.algebra(), *x.algebra());
  return Quaternion<Scalar>(x.algebra(), m.matrix() * x.coeffs());
}

/// sum_p sum_q x_p y_q delta(e_p, e_q)
template <ExactScalar Scalar>
Vec4<Scalar> eval_bilinear(const QuaternionAlgebra<Scalar>& algebra, const BilinValues<Scalar>& values,
                           const Vec4<Scalar>& x, const Vec4<Scalar>& y) {
  Vec4<Scalar> r = algebra.zero_vector();
  for (int p = 0; p < 4; ++p) {
    if (is_zero(x(p))) continue;
    for (int q = 0; q < 4; ++q) {
      if (is_zero(y(q))) continue;
      r += (x(p) * y(q)) * values.col(4 * p + q);
    }
  }
  return r;
}

template <ExactScalar Scalar>
Quaternion<Scalar> eval_bilinear(const BilinMap<Scalar>& b, const Quaternion<Scalar>& x, const Quaternion<Scalar>& y) {
  require_same_algebra(*b.algebra(), *x.algebra());
  require_same_algebra(*b.algebra(), *y.algebra());
  return Quaternion<Scalar>(b.algebra(), eval_bilinear(*b.algebra(), b.values(), x.coeffs(), y.coeffs()));
}

// --- flattening ------------------------------------------------------------
// LinMap unknowns are row-major m11, m12, ..., m44 (16 variables).
// BilinMap unknowns are ordered (p, q, component) lexicographically (64 variables).

inline constexpr Eigen::Index kLinMapUnknowns = 16;
inline constexpr Eigen::Index kBilinMapUnknowns = 64;

constexpr Eigen::Index linmap_index(int row, int col) { return 4 * row + col; }
constexpr Eigen::Index bilinmap_index(int p, int q, int component) { return 16 * p + 4 * q + component; }

template <ExactScalar Scalar>
VectorX<Scalar> flatten(const Mat4<Scalar>& m) {
  VectorX<Scalar> v(kLinMapUnknowns);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) v(linmap_index(r, c)) = m(r, c);
  }
  return v;
}

template <ExactScalar Scalar>
VectorX<Scalar> flatten(const BilinValues<Scalar>& values) {
  VectorX<Scalar> v(kBilinMapUnknowns);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      for (int c = 0; c < 4; ++c) v(bilinmap_index(p, q, c)) = values(c, 4 * p + q);
    }
  }
  return v;
}

template <ExactScalar Scalar>
VectorX<Scalar> flatten(const LinMap<Scalar>& m) {
  return flatten<Scalar>(m.matrix());
}

template <ExactScalar Scalar>
VectorX<Scalar> flatten(const BilinMap<Scalar>& b) {
  return flatten<Scalar>(b.values());
}

template <ExactScalar Scalar>
LinMap<Scalar> linmap_from_flat(AlgebraPtr<Scalar> algebra, const VectorX<Scalar>& v) {
  if (v.size() != kLinMapUnknowns) throw DomainError("linear map needs 16 coordinates");
  Mat4<Scalar> m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = v(linmap_index(r, c));
  }
  return LinMap<Scalar>(std::move(algebra), m);
}

template <ExactScalar Scalar>
BilinMap<Scalar> bilinmap_from_flat(AlgebraPtr<Scalar> algebra, const VectorX<Scalar>& v) {
  if (v.size() != kBilinMapUnknowns) throw DomainError("bilinear map needs 64 coordinates");
  BilinValues<Scalar> values;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      for (int c = 0; c < 4; ++c) values(c, 4 * p + q) = v(bilinmap_index(p, q, c));
    }
  }
  return BilinMap<Scalar>(std::move(algebra), values);
}

// --- elimination -----------------------------------------------------------

inline void require_field(const RingDescriptor& ring) {
  if (!ring.is_field()) throw UnsupportedRing("linear solving requires a field, got " + ring.name());
}

template <class Scalar>
struct RowEchelon {
  MatrixX<Scalar> reduced;            // nonzero rows only
  std::vector<Eigen::Index> pivots;  // pivot column of each row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Reduced row echelon form. Columns are scanned left to right; the pivot of
/// each column is the first remaining row with a nonzero entry there.
template <ExactScalar Scalar>
RowEchelon<Scalar> rref(const MatrixX<Scalar>& a, const RingDescriptor& ring) {
  require_field(ring);
  const Eigen::Index cols = a.cols();

  // Drop zero rows up front; constraint systems are mostly empty.
  std::vector<Eigen::Index> live;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!is_zero(a(r, c))) {
        live.push_back(r);
        break;
      }
    }
  }
  MatrixX<Scalar> m(static_cast<Eigen::Index>(live.size()), cols);
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(i), c) = ScalarRing<Scalar>::coerce(ring, a(live[i], c));
  }

  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  const Eigen::Index rows = m.rows();
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index found = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (!is_zero(m(r, col))) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    if (found != row) m.row(found).swap(m.row(row));

    const Scalar inv = *try_invert(m(row, col));
    for (Eigen::Index c = col; c < cols; ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const Scalar factor = m(r, col);
      for (Eigen::Index c = col; c < cols; ++c) {
        if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return RowEchelon<Scalar>{m.topRows(row), std::move(pivots)};
}

template <ExactScalar Scalar>
Eigen::Index rank(const MatrixX<Scalar>& a, const RingDescriptor& ring) {
  return rref(a, ring).rank();
}

/// Basis of a solution module, each vector reshapeable to a LinMap (16) or
/// BilinMap (64).
template <class Scalar>
struct SolutionSpace {
  Eigen::Index ambient_dim = 0;
  std::vector<VectorX<Scalar>> basis;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }

  /// Basis vectors as columns.
  MatrixX<Scalar> as_matrix(const RingDescriptor& ring) const {
    MatrixX<Scalar> m(ambient_dim, dim());
    for (Eigen::Index c = 0; c < dim(); ++c) {
      for (Eigen::Index r = 0; r < ambient_dim; ++r) m(r, c) = ScalarRing<Scalar>::coerce(ring, basis[c](r));
    }
    return m;
  }
};

/// Kernel of a over a field. One basis vector per free column in ascending
/// order: that free variable is 1, the other free variables 0.
template <ExactScalar Scalar>
SolutionSpace<Scalar> nullspace(const MatrixX<Scalar>& a, const RingDescriptor& ring) {
  RowEchelon<Scalar> e = rref(a, ring);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  const Scalar zero = ScalarRing<Scalar>::from_int(ring, 0);
  const Scalar one = ScalarRing<Scalar>::from_int(ring, 1);
  SolutionSpace<Scalar> space{cols, {}};
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    VectorX<Scalar> v = VectorX<Scalar>::Constant(cols, zero);
    v(free) = one;
    for (Eigen::Index r = 0; r < e.rank(); ++r) v(e.pivots[r]) = -e.reduced(r, free);
    space.basis.push_back(std::move(v));
  }
  return space;
}

/// Some solution of a x = rhs (free variables 0), or nullopt when inconsistent.
template <ExactScalar Scalar>
std::optional<VectorX<Scalar>> solve(const MatrixX<Scalar>& a, const VectorX<Scalar>& rhs, const RingDescriptor& ring) {
  if (rhs.size() != a.rows()) throw DomainError("right-hand side length does not match the system");
  MatrixX<Scalar> augmented(a.rows(), a.cols() + 1);
  augmented.leftCols(a.cols()) = a;
  augmented.col(a.cols()) = rhs;
  RowEchelon<Scalar> e = rref(augmented, ring);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  VectorX<Scalar> x = VectorX<Scalar>::Constant(a.cols(), ScalarRing<Scalar>::from_int(ring, 0));
  for (Eigen::Index r = 0; r < e.rank(); ++r) x(e.pivots[r]) = e.reduced(r, a.cols());
  return x;
}

/// Whether v lies in the span of the space's basis.
template <ExactScalar Scalar>
bool contains(const SolutionSpace<Scalar>& space, const VectorX<Scalar>& v, const RingDescriptor& ring) {
  if (v.size() != space.ambient_dim) throw DomainError("vector length does not match the solution space");
  if (space.dim() == 0) {
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      if (!is_zero(v(r))) return false;
    }
    return true;
  }
  return solve(space.as_matrix(ring), v, ring).has_value();
}

/// Builds the matrix of a linear constraint functional by evaluating it on
/// every unit vector of the unknown space: column u is residual(e_u).
template <ExactScalar Scalar, class Residual>
MatrixX<Scalar> assemble_constraints(const RingDescriptor& ring, Eigen::Index unknowns, Residual&& residual) {
  const Scalar zero = ScalarRing<Scalar>::from_int(ring, 0);
  const Scalar one = ScalarRing<Scalar>::from_int(ring, 1);
  MatrixX<Scalar> a;
  for (Eigen::Index u = 0; u < unknowns; ++u) {
    VectorX<Scalar> unit = VectorX<Scalar>::Constant(unknowns, zero);
    unit(u) = one;
    VectorX<Scalar> column = residual(unit);
    if (u == 0) a = MatrixX<Scalar>::Constant(column.size(), unknowns, zero);
    a.col(u) = column;
  }
  return a;
}

}  // namespace quatsuper
