#pragma once

// Super-biderivations of H^{a,b}. A bilinear map delta of degree g satisfies,
// for homogeneous x, y, z,
//   (L1) delta(xy, z) = (-1)^{g|x|} x delta(y, z) + (-1)^{|y||z|} delta(x, z) y
//   (L2) delta(x, yz) = delta(x, y) z + (-1)^{(g+|x|)|y|} y delta(x, z)
// and delta(A_s, A_t) lies in A_{s+t+g}.

#include <optional>
#include <string>
#include <utility>

#include "quatsuper/derivations.hpp"

namespace quatsuper {

enum class Symmetry { Any, SuperSkew, SuperSymmetric };

inline std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Any:
      return "any";
    case Symmetry::SuperSkew:
      return "skew";
    case Symmetry::SuperSymmetric:
      return "sym";
  }
  return "?";
}

struct BiderivationSpec {
  Parity degree = Parity::Even;
  Symmetry symmetry = Symmetry::Any;
};

struct BiderivationViolation {
  enum class Identity { Degree, L1, L2 };
  Identity identity;
  int x;
  int y;
  int z = -1;  // unused for Degree

  std::string describe() const {
    std::string args = std::string(basis_name(x)) + ", " + basis_name(y);
    switch (identity) {
      case Identity::Degree:
        return "delta(" + args + ") has the wrong parity";
      case Identity::L1:
        return "first Leibniz identity fails on (" + args + ", " + basis_name(z) + ")";
      case Identity::L2:
        return "second Leibniz identity fails on (" + args + ", " + basis_name(z) + ")";
    }
    return "?";
  }
};

/// Passes when `violation` is empty.
struct BiderivationCheck {
  std::optional<BiderivationViolation> violation;
  explicit operator bool() const { return !violation; }
};

namespace detail {

template <ExactScalar Scalar>
Vec4<Scalar> delta_at(const BilinValues<Scalar>& v, int p, int q) {
  return v.col(4 * p + q);
}

template <ExactScalar Scalar>
Vec4<Scalar> signed_vec(int s, const Vec4<Scalar>& v) {
  return s < 0 ? Vec4<Scalar>(-v) : v;
}

// delta(e_p e_q, e_r) - (-1)^{g|p|} e_p delta(e_q, e_r) - (-1)^{|q||r|} delta(e_p, e_r) e_q
template <ExactScalar Scalar>
Vec4<Scalar> first_defect(const QuaternionAlgebra<Scalar>& algebra, const BilinValues<Scalar>& v, Parity g, int p,
                          int q, int r) {
  const auto& pq = algebra.structure_constant(p, q);
  Vec4<Scalar> out = pq.coeff * delta_at(v, pq.index, r);
  out -= signed_vec(sign(g, basis_parity(p)), algebra.left_basis_multiply(p, delta_at(v, q, r)));
  out -= signed_vec(sign(basis_parity(q), basis_parity(r)), algebra.right_basis_multiply(delta_at(v, p, r), q));
  return out;
}

// delta(e_p, e_q e_r) - delta(e_p, e_q) e_r - (-1)^{(g+|p|)|q|} e_q delta(e_p, e_r)
template <ExactScalar Scalar>
Vec4<Scalar> second_defect(const QuaternionAlgebra<Scalar>& algebra, const BilinValues<Scalar>& v, Parity g, int p,
                           int q, int r) {
  const auto& qr = algebra.structure_constant(q, r);
  Vec4<Scalar> out = qr.coeff * delta_at(v, p, qr.index);
  out -= algebra.right_basis_multiply(delta_at(v, p, q), r);
  out -= signed_vec(sign(g + basis_parity(p), basis_parity(q)), algebra.left_basis_multiply(q, delta_at(v, p, r)));
  return out;
}

template <ExactScalar Scalar>
bool all_zero(const Vec4<Scalar>& v) {
  return is_zero(v(0)) && is_zero(v(1)) && is_zero(v(2)) && is_zero(v(3));
}

}  // namespace detail

/// Stacked constraints: degree condition (2 rows per basis pair), L1 and L2 on
/// all 64 basis triples (4 rows each), then the symmetry condition if any.
template <ExactScalar Scalar>
VectorX<Scalar> biderivation_residual(const QuaternionAlgebra<Scalar>& algebra, const BilinValues<Scalar>& v,
                                      const BiderivationSpec& spec) {
  const bool symmetric = spec.symmetry != Symmetry::Any;
  VectorX<Scalar> res(32 + 512 + (symmetric ? 64 : 0));
  Eigen::Index k = 0;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const Parity target = basis_parity(p) + basis_parity(q) + spec.degree;
      for (int c = 0; c < 4; ++c) {
        if (basis_parity(c) != target) res(k++) = v(c, 4 * p + q);
      }
    }
  }
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      for (int r = 0; r < 4; ++r) {
        res.template segment<4>(k) = detail::first_defect(algebra, v, spec.degree, p, q, r);
        res.template segment<4>(k + 4) = detail::second_defect(algebra, v, spec.degree, p, q, r);
        k += 8;
      }
    }
  }
  if (symmetric) {
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        // skew: delta(p,q) + s delta(q,p) = 0; symmetric: delta(p,q) - s delta(q,p) = 0
        int s = sign(basis_parity(p), basis_parity(q));
        if (spec.symmetry == Symmetry::SuperSymmetric) s = -s;
        res.template segment<4>(k) = detail::delta_at(v, p, q) + detail::signed_vec(s, detail::delta_at(v, q, p));
        k += 4;
      }
    }
  }
  return res;
}

template <ExactScalar Scalar>
BiderivationCheck is_super_biderivation(const BilinMap<Scalar>& b, Parity degree) {
  const auto& algebra = *b.algebra();
  const BilinValues<Scalar>& v = b.values();
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const Parity target = basis_parity(p) + basis_parity(q) + degree;
      for (int c = 0; c < 4; ++c) {
        if (basis_parity(c) != target && !is_zero(v(c, 4 * p + q))) {
          return {BiderivationViolation{BiderivationViolation::Identity::Degree, p, q}};
        }
      }
    }
  }
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      for (int r = 0; r < 4; ++r) {
        if (!detail::all_zero(detail::first_defect(algebra, v, degree, p, q, r))) {
          return {BiderivationViolation{BiderivationViolation::Identity::L1, p, q, r}};
        }
        if (!detail::all_zero(detail::second_defect(algebra, v, degree, p, q, r))) {
          return {BiderivationViolation{BiderivationViolation::Identity::L2, p, q, r}};
        }
      }
    }
  }
  return {};
}

/// (super-skew part, super-symmetric part) with respect to (-1)^{|x||y|}.
template <ExactScalar Scalar>
std::pair<BilinMap<Scalar>, BilinMap<Scalar>> symmetry_split(const BilinMap<Scalar>& b) {
  const auto& algebra = *b.algebra();
  BilinValues<Scalar> skew, sym;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      Vec4<Scalar> swapped = detail::signed_vec(sign(basis_parity(p), basis_parity(q)), b.value(q, p));
      skew.col(4 * p + q) = algebra.half() * (b.value(p, q) - swapped);
      sym.col(4 * p + q) = algebra.half() * (b.value(p, q) + swapped);
    }
  }
  return {BilinMap<Scalar>(b.algebra(), skew), BilinMap<Scalar>(b.algebra(), sym)};
}

template <ExactScalar Scalar>
MatrixX<Scalar> biderivation_constraints(const AlgebraPtr<Scalar>& algebra, const BiderivationSpec& spec) {
  return assemble_constraints<Scalar>(algebra->ring(), kBilinMapUnknowns, [&](const VectorX<Scalar>& unknowns) {
    return biderivation_residual(*algebra, bilinmap_from_flat(algebra, unknowns).values(), spec);
  });
}

/// Raw solution module of the stacked constraints; no cross-checks.
template <ExactScalar Scalar>
SolutionSpace<Scalar> biderivation_space(const AlgebraPtr<Scalar>& algebra, const BiderivationSpec& spec) {
  require_field(algebra->ring());
  return nullspace(biderivation_constraints(algebra, spec), algebra->ring());
}

// --- the degree-0 family ---------------------------------------------------

/// delta(x, y) = (lambda / 2) [x, y]_s: nonzero basis values
///   delta(i,j) = lambda k,      delta(j,i) = -lambda k,
///   delta(i,k) = -a lambda j,   delta(k,i) = a lambda j,
///   delta(j,j) = -b lambda,     delta(k,k) = -ab lambda.
template <ExactScalar Scalar>
BilinMap<Scalar> canonical_family(const AlgebraPtr<Scalar>& algebra, const Scalar& lambda) {
  const Scalar& a = algebra->a();
  const Scalar& b = algebra->b();
  BilinMap<Scalar> out = BilinMap<Scalar>::zero(algebra);
  auto put = [&](int p, int q, int c, const Scalar& value) {
    Vec4<Scalar> v = algebra->zero_vector();
    v(c) = value;
    out.set_value(p, q, v);
  };
  put(1, 2, 3, lambda);
  put(2, 1, 3, -lambda);
  put(1, 3, 2, -(a * lambda));
  put(3, 1, 2, a * lambda);
  put(2, 2, 0, -(b * lambda));
  put(3, 3, 0, -(a * b * lambda));
  return out;
}

/// The parameter of a degree-0 family member: the k-component of delta(i, j).
template <ExactScalar Scalar>
Scalar canonical_lambda(const BilinMap<Scalar>& b) {
  return b.value(1, 2)(3);
}

/// Closed form of the canonical family:
///   -b lambda x3 y3 - ab lambda x4 y4 + a lambda (x4 y2 - x2 y4) j + lambda (x2 y3 - x3 y2) k.
/// The x3 y3 coefficient is -b lambda, the value the solver certifies.
template <ExactScalar Scalar>
Quaternion<Scalar> canonical_eval(const Scalar& lambda, const Quaternion<Scalar>& x, const Quaternion<Scalar>& y) {
  require_same_algebra(*x.algebra(), *y.algebra());
  const auto& algebra = *x.algebra();
  const Scalar& a = algebra.a();
  const Scalar& b = algebra.b();
  Vec4<Scalar> r;
  r(0) = -(b * lambda * x[2] * y[2]) - a * b * lambda * x[3] * y[3];
  r(1) = algebra.zero();
  r(2) = a * lambda * (x[3] * y[1] - x[1] * y[3]);
  r(3) = lambda * (x[1] * y[2] - x[2] * y[1]);
  return Quaternion<Scalar>(x.algebra(), r);
}

/// Which coefficient of x3 y3 (per unit lambda) the solved degree-0 skew
/// space actually has, next to the one in the displayed closed form (-ab).
template <ExactScalar Scalar>
struct RealPartAdjudication {
  Scalar certified;       // from the solver basis, normalised to lambda = 1
  Scalar displayed;       // -ab
  Scalar certified_x4y4;  // expected -ab
  bool displayed_certified = false;
  bool consistent_with_eval = false;  // canonical_eval(1, j, j) agrees with the solver
};

template <ExactScalar Scalar>
RealPartAdjudication<Scalar> adjudicate_real_part(const AlgebraPtr<Scalar>& algebra) {
  SolutionSpace<Scalar> space = biderivation_space(algebra, {Parity::Even, Symmetry::SuperSkew});
  if (space.dim() != 1) throw InternalContradiction("degree-0 skew biderivations are not one-dimensional");
  BilinMap<Scalar> basis = bilinmap_from_flat(algebra, space.basis.front());
  const Scalar lambda = canonical_lambda(basis);
  auto inv = try_invert(lambda);
  if (!inv) throw InternalContradiction("degree-0 skew biderivation basis has lambda = 0");

  RealPartAdjudication<Scalar> out;
  out.certified = basis.value(2, 2)(0) * *inv;
  out.certified_x4y4 = basis.value(3, 3)(0) * *inv;
  out.displayed = -(algebra->a() * algebra->b());
  out.displayed_certified = out.displayed == out.certified;
  const auto j = Quaternion<Scalar>::basis(algebra, 2);
  out.consistent_with_eval = canonical_eval(algebra->one(), j, j)[0] == out.certified;
  return out;
}

/// Cross-checked solver. Throws InternalContradiction if the dimension or the
/// basis disagrees with the classification: degree 0 is one-dimensional and
/// super-skew (spanned by the canonical family), degree 1 vanishes.
template <ExactScalar Scalar>
SolutionSpace<Scalar> solve_biderivations(const AlgebraPtr<Scalar>& algebra, const BiderivationSpec& spec) {
  SolutionSpace<Scalar> space = biderivation_space(algebra, spec);
  const bool nonzero = spec.degree == Parity::Even && spec.symmetry != Symmetry::SuperSymmetric;
  const Eigen::Index expected = nonzero ? 1 : 0;
  if (space.dim() != expected) {
    throw InternalContradiction("super-biderivations of degree " + to_string(spec.degree) + " (" +
                                to_string(spec.symmetry) + ") have dimension " + std::to_string(space.dim()) +
                                ", expected " + std::to_string(expected));
  }
  for (const auto& v : space.basis) {
    BilinMap<Scalar> b = bilinmap_from_flat(algebra, v);
    if (!(canonical_family(algebra, canonical_lambda(b)) == b)) {
      throw InternalContradiction("solved super-biderivation is not a member of the canonical family");
    }
  }
  return space;
}

// --- unary slices ----------------------------------------------------------

/// y -> delta(e_p, y), a superderivation of degree g + |e_p|.
template <ExactScalar Scalar>
LinMap<Scalar> left_slice(const BilinMap<Scalar>& b, int p) {
  Mat4<Scalar> m;
  for (int q = 0; q < 4; ++q) m.col(q) = b.value(p, q);
  return LinMap<Scalar>(b.algebra(), m);
}

/// y -> delta(y, e_p).
template <ExactScalar Scalar>
LinMap<Scalar> right_slice(const BilinMap<Scalar>& b, int p) {
  Mat4<Scalar> m;
  for (int q = 0; q < 4; ++q) m.col(q) = b.value(q, p);
  return LinMap<Scalar>(b.algebra(), m);
}

/// y -> (-1)^{|y||e_p|} delta(y, e_p), a superderivation of degree g + |e_p|.
/// Coincides with right_slice for even e_p.
template <ExactScalar Scalar>
LinMap<Scalar> twisted_right_slice(const BilinMap<Scalar>& b, int p) {
  Mat4<Scalar> m;
  for (int q = 0; q < 4; ++q) {
    m.col(q) = detail::signed_vec(sign(basis_parity(q), basis_parity(p)), b.value(q, p));
  }
  return LinMap<Scalar>(b.algebra(), m);
}

}  // namespace quatsuper
