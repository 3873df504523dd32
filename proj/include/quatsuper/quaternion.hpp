#pragma once

// The generalized quaternion algebra H^{a,b} with basis {1, i, j, k},
//   i^2 = -a, j^2 = -b, k^2 = -ab, ij = -ji = k, jk = -kj = b i, ki = -ik = a j,
// graded by A_0 = R + Ri (even) and A_1 = Rj + Rk (odd).

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "quatsuper/ring.hpp"

namespace quatsuper {

template <class Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <class Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// --- grading ---------------------------------------------------------------

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity operator+(Parity x, Parity y) {
  return static_cast<Parity>((static_cast<int>(x) + static_cast<int>(y)) & 1);
}

constexpr int bit(Parity p) { return static_cast<int>(p); }

/// (-1)^{xy}
constexpr int sign(Parity x, Parity y) { return (bit(x) & bit(y)) ? -1 : 1; }

/// Parity of the basis element e_p, p in 0..3 for 1, i, j, k.
constexpr Parity basis_parity(int p) { return p < 2 ? Parity::Even : Parity::Odd; }

inline const char* basis_name(int p) {
  static constexpr std::array<const char*, 4> names{"1", "i", "j", "k"};
  return names.at(static_cast<std::size_t>(p));
}

inline std::string to_string(Parity p) { return p == Parity::Even ? "0" : "1"; }

/// Exact coefficient-wise equality (Eigen's operator== does not compose with
/// Boost.Multiprecision scalars).
template <class A, class B>
bool coeff_equal(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      if (!(x.coeff(r, c) == y.coeff(r, c))) return false;
    }
  }
  return true;
}

// --- algebra -------------------------------------------------------------

template <ExactScalar Scalar>
struct AlgebraParams {
  RingDescriptor ring;
  Scalar a;
  Scalar b;

  bool operator==(const AlgebraParams& other) const {
    return ring == other.ring && a == other.a && b == other.b;
  }
};

template <ExactScalar Scalar>
class QuaternionAlgebra;

template <ExactScalar Scalar>
using AlgebraPtr = std::shared_ptr<const QuaternionAlgebra<Scalar>>;

/// Shared, immutable context for H^{a,b}: parameters plus the structure
/// constants e_p e_q = c_{pq} e_{r(p,q)}.
template <ExactScalar Scalar>
class QuaternionAlgebra {
 public:
  struct StructureConstant {
    Scalar coeff;
    int index;
  };

  /// Throws DomainError if a or b is not a unit or the scalar type does not
  /// represent the ring.
  static AlgebraPtr<Scalar> create(const RingDescriptor& ring, const Scalar& a, const Scalar& b) {
    if (!ScalarRing<Scalar>::accepts(ring)) throw DomainError("scalar type does not represent " + ring.name());
    Scalar ca = ScalarRing<Scalar>::coerce(ring, a);
    Scalar cb = ScalarRing<Scalar>::coerce(ring, b);
    if (!try_invert(ca)) throw DomainError("a = " + format_element(ca) + " is not a unit in " + ring.name());
    if (!try_invert(cb)) throw DomainError("b = " + format_element(cb) + " is not a unit in " + ring.name());
    return AlgebraPtr<Scalar>(new QuaternionAlgebra(AlgebraParams<Scalar>{ring, ca, cb}));
  }

  static AlgebraPtr<Scalar> create(const AlgebraParams<Scalar>& params) {
    return create(params.ring, params.a, params.b);
  }

  const AlgebraParams<Scalar>& params() const { return params_; }
  const RingDescriptor& ring() const { return params_.ring; }
  const Scalar& a() const { return params_.a; }
  const Scalar& b() const { return params_.b; }
  const Scalar& b_inverse() const { return b_inv_; }
  const Scalar& half() const { return half_; }

  Scalar scalar(long long v) const { return ScalarRing<Scalar>::from_int(params_.ring, v); }
  Scalar zero() const { return scalar(0); }
  Scalar one() const { return scalar(1); }

  Vec4<Scalar> zero_vector() const { return Vec4<Scalar>::Constant(zero()); }
  Vec4<Scalar> unit_vector(int p) const {
    Vec4<Scalar> v = zero_vector();
    v(p) = one();
    return v;
  }

  const StructureConstant& structure_constant(int p, int q) const { return table_[p][q]; }

  /// Product of coefficient vectors via the structure constants.
  Vec4<Scalar> multiply(const Vec4<Scalar>& x, const Vec4<Scalar>& y) const {
    Vec4<Scalar> r = zero_vector();
    for (int p = 0; p < 4; ++p) {
      if (is_zero(x(p))) continue;
      for (int q = 0; q < 4; ++q) {
        if (is_zero(y(q))) continue;
        const auto& c = table_[p][q];
        r(c.index) += c.coeff * x(p) * y(q);
      }
    }
    return r;
  }

  /// e_p * y
  Vec4<Scalar> left_basis_multiply(int p, const Vec4<Scalar>& y) const {
    Vec4<Scalar> r = zero_vector();
    for (int q = 0; q < 4; ++q) {
      const auto& c = table_[p][q];
      r(c.index) += c.coeff * y(q);
    }
    return r;
  }

  /// x * e_q
  Vec4<Scalar> right_basis_multiply(const Vec4<Scalar>& x, int q) const {
    Vec4<Scalar> r = zero_vector();
    for (int p = 0; p < 4; ++p) {
      const auto& c = table_[p][q];
      r(c.index) += c.coeff * x(p);
    }
    return r;
  }

  static Vec4<Scalar> even_part(const Vec4<Scalar>& x) {
    Vec4<Scalar> r = x;
    r(2) = Scalar(0) * x(2);
    r(3) = Scalar(0) * x(3);
    return r;
  }

  static Vec4<Scalar> odd_part(const Vec4<Scalar>& x) {
    Vec4<Scalar> r = x;
    r(0) = Scalar(0) * x(0);
    r(1) = Scalar(0) * x(1);
    return r;
  }

  /// xy - (-1)^{|x||y|} yx for homogeneous x, y of the given parities.
  Vec4<Scalar> homogeneous_bracket(const Vec4<Scalar>& x, Parity px, const Vec4<Scalar>& y, Parity py) const {
    Vec4<Scalar> r = multiply(x, y);
    Vec4<Scalar> s = multiply(y, x);
    return sign(px, py) < 0 ? Vec4<Scalar>(r + s) : Vec4<Scalar>(r - s);
  }

  /// Lie superproduct extended bilinearly over the four grade-component pairs.
  Vec4<Scalar> super_bracket(const Vec4<Scalar>& x, const Vec4<Scalar>& y) const {
    const std::array<Vec4<Scalar>, 2> xs{even_part(x), odd_part(x)};
    const std::array<Vec4<Scalar>, 2> ys{even_part(y), odd_part(y)};
    Vec4<Scalar> r = zero_vector();
    for (int u = 0; u < 2; ++u) {
      for (int v = 0; v < 2; ++v) {
        r += homogeneous_bracket(xs[u], static_cast<Parity>(u), ys[v], static_cast<Parity>(v));
      }
    }
    return r;
  }

  /// Jordan superproduct extended bilinearly.
  Vec4<Scalar> super_jordan(const Vec4<Scalar>& x, const Vec4<Scalar>& y) const {
    const std::array<Vec4<Scalar>, 2> xs{even_part(x), odd_part(x)};
    const std::array<Vec4<Scalar>, 2> ys{even_part(y), odd_part(y)};
    Vec4<Scalar> r = zero_vector();
    for (int u = 0; u < 2; ++u) {
      for (int v = 0; v < 2; ++v) {
        Vec4<Scalar> xy = multiply(xs[u], ys[v]);
        Vec4<Scalar> yx = multiply(ys[v], xs[u]);
        r += sign(static_cast<Parity>(u), static_cast<Parity>(v)) < 0 ? Vec4<Scalar>(xy - yx)
                                                                        : Vec4<Scalar>(xy + yx);
      }
    }
    return half_ * r;
  }

  bool same_algebra(const QuaternionAlgebra& other) const { return this == &other || params_ == other.params_; }

 private:
  explicit QuaternionAlgebra(AlgebraParams<Scalar> params)
      : params_(std::move(params)), b_inv_(*try_invert(params_.b)), half_(quatsuper::half<Scalar>(params_.ring)) {
    const Scalar& a = params_.a;
    const Scalar& b = params_.b;
    const Scalar one = this->one();
    auto set = [this](int p, int q, Scalar c, int r) { table_[p][q] = StructureConstant{std::move(c), r}; };
    for (int p = 0; p < 4; ++p) {
      set(0, p, one, p);
      set(p, 0, one, p);
    }
    set(1, 1, -a, 0);
    set(2, 2, -b, 0);
    set(3, 3, -(a * b), 0);
    set(1, 2, one, 3);   // ij = k
    set(2, 1, -one, 3);  // ji = -k
    set(2, 3, b, 1);     // jk = b i
    set(3, 2, -b, 1);    // kj = -b i
    set(3, 1, a, 2);     // ki = a j
    set(1, 3, -a, 2);    // ik = -a j
  }

  AlgebraParams<Scalar> params_;
  Scalar b_inv_;
  Scalar half_;
  std::array<std::array<StructureConstant, 4>, 4> table_;
};

template <ExactScalar Scalar>
void require_same_algebra(const QuaternionAlgebra<Scalar>& x, const QuaternionAlgebra<Scalar>& y) {
  if (!x.same_algebra(y)) throw DomainError("operands belong to different quaternion algebras");
}

// --- elements --------------------------------------------------------------

/// x = x1 1 + x2 i + x3 j + x4 k in a fixed H^{a,b}.
template <ExactScalar Scalar>
class Quaternion {
 public:
  Quaternion(AlgebraPtr<Scalar> algebra, const Vec4<Scalar>& coeffs) : algebra_(std::move(algebra)) {
    for (int p = 0; p < 4; ++p) coeffs_(p) = ScalarRing<Scalar>::coerce(algebra_->ring(), coeffs(p));
  }

  static Quaternion zero(AlgebraPtr<Scalar> algebra) {
    Vec4<Scalar> v = algebra->zero_vector();
    return Quaternion(std::move(algebra), v);
  }

  static Quaternion basis(AlgebraPtr<Scalar> algebra, int p) {
    Vec4<Scalar> v = algebra->unit_vector(p);
    return Quaternion(std::move(algebra), v);
  }

  const AlgebraPtr<Scalar>& algebra() const { return algebra_; }
  const Vec4<Scalar>& coeffs() const { return coeffs_; }
  const Scalar& operator[](int p) const { return coeffs_(p); }
  bool is_zero() const {
    for (int p = 0; p < 4; ++p) {
      if (!quatsuper::is_zero(coeffs_(p))) return false;
    }
    return true;
  }

  friend Quaternion operator+(const Quaternion& x, const Quaternion& y) {
    require_same_algebra(*x.algebra_, *y.algebra_);
    return Quaternion(x.algebra_, x.coeffs_ + y.coeffs_);
  }
  friend Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    require_same_algebra(*x.algebra_, *y.algebra_);
    return Quaternion(x.algebra_, x.coeffs_ - y.coeffs_);
  }
  friend Quaternion operator*(const Scalar& s, const Quaternion& x) { return Quaternion(x.algebra_, s * x.coeffs_); }
  friend bool operator==(const Quaternion& x, const Quaternion& y) {
    return x.algebra_->same_algebra(*y.algebra_) && coeff_equal(x.coeffs_, y.coeffs_);
  }

  std::string to_string() const {
    std::string s = "(";
    for (int p = 0; p < 4; ++p) s += (p ? ", " : "") + format_element(coeffs_(p));
    return s + ")";
  }

 private:
  AlgebraPtr<Scalar> algebra_;
  Vec4<Scalar> coeffs_;
};

template <ExactScalar Scalar>
Quaternion<Scalar> qmul(const Quaternion<Scalar>& x, const Quaternion<Scalar>& y) {
  require_same_algebra(*x.algebra(), *y.algebra());
  return Quaternion<Scalar>(x.algebra(), x.algebra()->multiply(x.coeffs(), y.coeffs()));
}

template <ExactScalar Scalar>
std::pair<Quaternion<Scalar>, Quaternion<Scalar>> grade_split(const Quaternion<Scalar>& x) {
  using Algebra = QuaternionAlgebra<Scalar>;
  return {Quaternion<Scalar>(x.algebra(), Algebra::even_part(x.coeffs())),
          Quaternion<Scalar>(x.algebra(), Algebra::odd_part(x.coeffs()))};
}

/// nullopt means NotHomogeneous. Zero counts as even.
template <ExactScalar Scalar>
std::optional<Parity> parity_of(const Quaternion<Scalar>& x) {
  const auto& c = x.coeffs();
  bool has_even = !is_zero(c(0)) || !is_zero(c(1));
  bool has_odd = !is_zero(c(2)) || !is_zero(c(3));
  if (has_even && has_odd) return std::nullopt;
  return has_odd ? Parity::Odd : Parity::Even;
}

template <ExactScalar Scalar>
Quaternion<Scalar> lie_super(const Quaternion<Scalar>& x, const Quaternion<Scalar>& y) {
  require_same_algebra(*x.algebra(), *y.algebra());
  return Quaternion<Scalar>(x.algebra(), x.algebra()->super_bracket(x.coeffs(), y.coeffs()));
}

template <ExactScalar Scalar>
Quaternion<Scalar> jordan_super(const Quaternion<Scalar>& x, const Quaternion<Scalar>& y) {
  require_same_algebra(*x.algebra(), *y.algebra());
  return Quaternion<Scalar>(x.algebra(), x.algebra()->super_jordan(x.coeffs(), y.coeffs()));
}

template <ExactScalar Scalar>
VectorX<Scalar> to_vector(const Quaternion<Scalar>& x) {
  return x.coeffs();
}

/// Throws DomainError unless v has exactly four entries over the algebra's ring.
template <ExactScalar Scalar>
Quaternion<Scalar> from_vector(const VectorX<Scalar>& v, AlgebraPtr<Scalar> algebra) {
  if (v.size() != 4) throw DomainError("quaternion coordinate vector must have 4 entries, got " + std::to_string(v.size()));
  return Quaternion<Scalar>(std::move(algebra), Vec4<Scalar>(v));
}

}  // namespace quatsuper
