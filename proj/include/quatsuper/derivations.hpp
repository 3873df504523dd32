#pragma once

// Superderivations of H^{a,b}: the graded Leibniz check, the one-parameter
// (degree 0) and two-parameter (degree 1) closed forms, the constraint solver,
// inner superderivations and the super commutator.

#include <optional>
#include <string>

#include "quatsuper/linear.hpp"

namespace quatsuper {

/// Closed-form superderivation parameters. Degree 0 uses lambda:
///   D(j) = lambda k, D(k) = -a lambda j, D(1) = D(i) = 0.
/// Degree 1 uses mu, nu:
///   D(j) = mu, D(k) = nu, D(i) = -b^{-1} nu j + b^{-1} mu k, D(1) = 0.
template <ExactScalar Scalar>
struct DerivationParams {
  Parity degree = Parity::Even;
  Scalar lambda{};
  Scalar mu{};
  Scalar nu{};

  static DerivationParams even(const Scalar& lambda) { return {Parity::Even, lambda, Scalar(0), Scalar(0)}; }
  static DerivationParams odd(const Scalar& mu, const Scalar& nu) { return {Parity::Odd, Scalar(0), mu, nu}; }

  Mat4<Scalar> to_matrix(const QuaternionAlgebra<Scalar>& algebra) const {
    Mat4<Scalar> m = Mat4<Scalar>::Constant(algebra.zero());
    if (degree == Parity::Even) {
      m(2, 3) = -(algebra.a() * lambda);
      m(3, 2) = lambda;
    } else {
      m(0, 2) = mu;
      m(0, 3) = nu;
      m(2, 1) = -(algebra.b_inverse() * nu);
      m(3, 1) = algebra.b_inverse() * mu;
    }
    return m;
  }

  LinMap<Scalar> to_linmap(const AlgebraPtr<Scalar>& algebra) const { return LinMap<Scalar>(algebra, to_matrix(*algebra)); }

  bool operator==(const DerivationParams& o) const {
    if (degree != o.degree) return false;
    return degree == Parity::Even ? lambda == o.lambda : (mu == o.mu && nu == o.nu);
  }
};

/// Reads the canonical coordinates: lambda = m43, mu = m13, nu = m14.
template <ExactScalar Scalar>
DerivationParams<Scalar> recover_params(const LinMap<Scalar>& d, Parity degree) {
  if (degree == Parity::Even) return DerivationParams<Scalar>::even(d.entry(4, 3));
  return DerivationParams<Scalar>::odd(d.entry(1, 3), d.entry(1, 4));
}

struct DerivationViolation {
  enum class Kind { Grading, Leibniz };
  Kind kind;
  int p;       // basis index of the first argument (or of the mis-graded image)
  int q = -1;  // second argument for Leibniz failures

  std::string describe() const {
    if (kind == Kind::Grading) return std::string("D(") + basis_name(p) + ") has the wrong parity";
    return std::string("Leibniz rule fails on (") + basis_name(p) + ", " + basis_name(q) + ")";
  }
};

/// Passes when `violation` is empty.
struct DerivationCheck {
  std::optional<DerivationViolation> violation;
  explicit operator bool() const { return !violation; }
};

/// Stacked constraints on a matrix: 8 grading entries followed by the Leibniz
/// defect D(e_p e_q) - D(e_p) e_q - (-1)^{deg |e_p|} e_p D(e_q) on all 16
/// basis pairs (4 rows each).
template <ExactScalar Scalar>
VectorX<Scalar> superderivation_residual(const QuaternionAlgebra<Scalar>& algebra, const Mat4<Scalar>& d, Parity degree) {
  VectorX<Scalar> res(8 + 64);
  Eigen::Index k = 0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (basis_parity(r) != basis_parity(c) + degree) res(k++) = d(r, c);
    }
  }
  for (int p = 0; p < 4; ++p) {
    const Vec4<Scalar> dp = d.col(p);
    for (int q = 0; q < 4; ++q) {
      const auto& sc = algebra.structure_constant(p, q);
      Vec4<Scalar> defect = sc.coeff * d.col(sc.index);
      defect -= algebra.right_basis_multiply(dp, q);
      Vec4<Scalar> t = algebra.left_basis_multiply(p, d.col(q));
      if (sign(degree, basis_parity(p)) < 0) {
        defect += t;
      } else {
        defect -= t;
      }
      res.template segment<4>(k) = defect;
      k += 4;
    }
  }
  return res;
}

template <ExactScalar Scalar>
DerivationCheck is_superderivation(const LinMap<Scalar>& d, Parity degree) {
  const auto& algebra = *d.algebra();
  const Mat4<Scalar>& m = d.matrix();
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) {
      if (basis_parity(r) != basis_parity(c) + degree && !is_zero(m(r, c))) {
        return {DerivationViolation{DerivationViolation::Kind::Grading, c}};
      }
    }
  }
  VectorX<Scalar> res = superderivation_residual(algebra, m, degree);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      for (int c = 0; c < 4; ++c) {
        if (!is_zero(res(8 + 16 * p + 4 * q + c))) {
          return {DerivationViolation{DerivationViolation::Kind::Leibniz, p, q}};
        }
      }
    }
  }
  return {};
}

template <ExactScalar Scalar>
MatrixX<Scalar> superderivation_constraints(const AlgebraPtr<Scalar>& algebra, Parity degree) {
  return assemble_constraints<Scalar>(algebra->ring(), kLinMapUnknowns, [&](const VectorX<Scalar>& unknowns) {
    return superderivation_residual(*algebra, linmap_from_flat(algebra, unknowns).matrix(), degree);
  });
}

/// Raw solution module of the stacked constraints; no cross-checks.
template <ExactScalar Scalar>
SolutionSpace<Scalar> superderivation_space(const AlgebraPtr<Scalar>& algebra, Parity degree) {
  require_field(algebra->ring());
  return nullspace(superderivation_constraints(algebra, degree), algebra->ring());
}

/// The module of superderivations of the given degree, solved over a field.
/// Throws InternalContradiction if the result disagrees with the closed forms.
template <ExactScalar Scalar>
SolutionSpace<Scalar> solve_superderivations(const AlgebraPtr<Scalar>& algebra, Parity degree) {
  SolutionSpace<Scalar> space = superderivation_space(algebra, degree);

  const Eigen::Index expected = degree == Parity::Even ? 1 : 2;
  if (space.dim() != expected) {
    throw InternalContradiction("superderivations of degree " + to_string(degree) + " have dimension " +
                                std::to_string(space.dim()) + ", expected " + std::to_string(expected));
  }
  for (const auto& v : space.basis) {
    LinMap<Scalar> d = linmap_from_flat(algebra, v);
    if (!(recover_params(d, degree).to_linmap(algebra) == d)) {
      throw InternalContradiction("solved superderivation does not match the closed form");
    }
  }
  return space;
}

/// I_x(y) = [x, y]_s; column q is [x, e_q]_s.
template <ExactScalar Scalar>
LinMap<Scalar> inner_superderivation(const Quaternion<Scalar>& x) {
  const auto& algebra = *x.algebra();
  Mat4<Scalar> m;
  for (int q = 0; q < 4; ++q) m.col(q) = algebra.super_bracket(x.coeffs(), algebra.unit_vector(q));
  return LinMap<Scalar>(x.algebra(), m);
}

/// Splits a map into its degree-0 and degree-1 blocks.
template <ExactScalar Scalar>
std::pair<LinMap<Scalar>, LinMap<Scalar>> degree_split(const LinMap<Scalar>& d) {
  Mat4<Scalar> even = d.matrix();
  Mat4<Scalar> odd = d.matrix();
  const Scalar zero = d.algebra()->zero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      (basis_parity(r) == basis_parity(c) ? odd : even)(r, c) = zero;
    }
  }
  return {LinMap<Scalar>(d.algebra(), even), LinMap<Scalar>(d.algebra(), odd)};
}

struct InnerSummary {
  Eigen::Index derivation_dim = 0;  // dim Der_s = dim Der_0 + dim Der_1
  Eigen::Index inner_dim = 0;       // rank of {I_1, I_i, I_j, I_k}
  bool inner_in_derivations = false;
  Eigen::Index outer_dim() const { return derivation_dim - inner_dim; }
};

template <ExactScalar Scalar>
InnerSummary inner_summary(const AlgebraPtr<Scalar>& algebra) {
  const RingDescriptor& ring = algebra->ring();
  SolutionSpace<Scalar> der0 = solve_superderivations(algebra, Parity::Even);
  SolutionSpace<Scalar> der1 = solve_superderivations(algebra, Parity::Odd);
  SolutionSpace<Scalar> der{kLinMapUnknowns, der0.basis};
  der.basis.insert(der.basis.end(), der1.basis.begin(), der1.basis.end());

  InnerSummary out;
  out.derivation_dim = der.dim();
  MatrixX<Scalar> inner(4, kLinMapUnknowns);
  out.inner_in_derivations = true;
  for (int p = 0; p < 4; ++p) {
    VectorX<Scalar> v = flatten(inner_superderivation(Quaternion<Scalar>::basis(algebra, p)));
    inner.row(p) = v.transpose();
    out.inner_in_derivations = out.inner_in_derivations && contains(der, v, ring);
  }
  out.inner_dim = rank(inner, ring);
  return out;
}

/// dim Der_s - dim Inn_s. Throws InternalContradiction if an inner
/// superderivation falls outside the solved space.
template <ExactScalar Scalar>
Eigen::Index outer_dimension(const AlgebraPtr<Scalar>& algebra) {
  InnerSummary s = inner_summary(algebra);
  if (!s.inner_in_derivations) throw InternalContradiction("inner superderivation outside Der_s");
  return s.outer_dim();
}

/// [D, E]_s = DE - (-1)^{|D||E|} ED for homogeneous superderivations.
template <ExactScalar Scalar>
LinMap<Scalar> superbracket(const LinMap<Scalar>& d, Parity d_degree, const LinMap<Scalar>& e, Parity e_degree) {
  require_same_algebra(*d.algebra(), *e.algebra());
  if (auto check = is_superderivation(d, d_degree); !check) {
    throw InputNotDerivation("first argument: " + check.violation->describe());
  }
  if (auto check = is_superderivation(e, e_degree); !check) {
    throw InputNotDerivation("second argument: " + check.violation->describe());
  }
  Mat4<Scalar> de = d.matrix() * e.matrix();
  Mat4<Scalar> ed = e.matrix() * d.matrix();
  LinMap<Scalar> out(d.algebra(), sign(d_degree, e_degree) < 0 ? Mat4<Scalar>(de + ed) : Mat4<Scalar>(de - ed));
  if (!is_superderivation(out, d_degree + e_degree)) {
    throw InternalContradiction("super commutator of superderivations is not a superderivation");
  }
  return out;
}

}  // namespace quatsuper
