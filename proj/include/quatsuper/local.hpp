#pragma once

// Local superderivations: maps that agree, point by point, with some
// superderivation of a fixed degree. Every local superderivation of H^{a,b}
// is a superderivation; classify_local decides this from finitely many probe
// points and either returns the global parameters or a witness point.

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "quatsuper/derivations.hpp"

namespace quatsuper {

/// Columns are M_t x for each basis parameter t of the degree family.
template <ExactScalar Scalar>
MatrixX<Scalar> family_at(const QuaternionAlgebra<Scalar>& algebra, Parity degree, const Vec4<Scalar>& x) {
  if (degree == Parity::Even) {
    MatrixX<Scalar> a(4, 1);
    a.col(0) = DerivationParams<Scalar>::even(algebra.one()).to_matrix(algebra) * x;
    return a;
  }
  MatrixX<Scalar> a(4, 2);
  a.col(0) = DerivationParams<Scalar>::odd(algebra.one(), algebra.zero()).to_matrix(algebra) * x;
  a.col(1) = DerivationParams<Scalar>::odd(algebra.zero(), algebra.one()).to_matrix(algebra) * x;
  return a;
}

template <ExactScalar Scalar>
DerivationParams<Scalar> params_from_solution(Parity degree, const VectorX<Scalar>& t) {
  return degree == Parity::Even ? DerivationParams<Scalar>::even(t(0)) : DerivationParams<Scalar>::odd(t(0), t(1));
}

/// Parameters of some degree-`degree` superderivation d with d(x) = delta(x),
/// or nullopt if there is none.
template <ExactScalar Scalar>
std::optional<DerivationParams<Scalar>> pointwise_solvable(const LinMap<Scalar>& delta, Parity degree,
                                                           const Quaternion<Scalar>& x) {
  require_same_algebra(*delta.algebra(), *x.algebra());
  const auto& algebra = *delta.algebra();
  require_field(algebra.ring());
  VectorX<Scalar> rhs = delta.matrix() * x.coeffs();
  auto t = solve(family_at(algebra, degree, x.coeffs()), rhs, algebra.ring());
  if (!t) return std::nullopt;
  return params_from_solution(degree, *t);
}

/// Basis elements followed by all pairwise sums e_p + e_q, p < q.
template <ExactScalar Scalar>
std::vector<Quaternion<Scalar>> probe_points(const AlgebraPtr<Scalar>& algebra) {
  std::vector<Quaternion<Scalar>> probes;
  for (int p = 0; p < 4; ++p) probes.push_back(Quaternion<Scalar>::basis(algebra, p));
  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) {
      probes.push_back(Quaternion<Scalar>::basis(algebra, p) + Quaternion<Scalar>::basis(algebra, q));
    }
  }
  return probes;
}

template <ExactScalar Scalar>
struct LocalVerdict {
  std::optional<DerivationParams<Scalar>> derivation;  // set for IsDerivation
  std::optional<Quaternion<Scalar>> witness;           // set for NotLocal
  std::string reason;

  bool is_derivation() const { return derivation.has_value(); }
};

template <ExactScalar Scalar>
std::string unsolvable_reason(const LinMap<Scalar>& delta, Parity degree, const Quaternion<Scalar>& x) {
  return "no degree-" + to_string(degree) + " superderivation d satisfies d(x) = Delta(x) = " +
         quatsuper::apply(delta, x).to_string() + " at x = " + x.to_string();
}

/// Decides whether delta is a local superderivation of the given degree.
template <ExactScalar Scalar>
LocalVerdict<Scalar> classify_local(const LinMap<Scalar>& delta, Parity degree) {
  const AlgebraPtr<Scalar>& algebra = delta.algebra();
  const RingDescriptor& ring = algebra->ring();
  require_field(ring);

  for (const auto& x : probe_points(algebra)) {
    if (!pointwise_solvable(delta, degree, x)) {
      return LocalVerdict<Scalar>{std::nullopt, x, unsolvable_reason(delta, degree, x)};
    }
  }

  // Fit one parameter vector to all 16 entries.
  const int nparams = degree == Parity::Even ? 1 : 2;
  MatrixX<Scalar> family(kLinMapUnknowns, nparams);
  for (int t = 0; t < nparams; ++t) {
    VectorX<Scalar> unit = VectorX<Scalar>::Constant(nparams, algebra->zero());
    unit(t) = algebra->one();
    family.col(t) = flatten<Scalar>(params_from_solution(degree, unit).to_matrix(*algebra));
  }
  auto fit = solve(family, flatten(delta), ring);
  if (!fit) throw InternalContradiction("map is solvable at every probe point but matches no superderivation");
  DerivationParams<Scalar> params = params_from_solution(degree, *fit);
  if (!is_superderivation(delta, degree)) {
    throw InternalContradiction("fitted local superderivation fails the superderivation check");
  }
  return LocalVerdict<Scalar>{params, std::nullopt, {}};
}

inline constexpr std::int64_t kMaxEnumerationPrime = 7;

/// Passes when `witness` is empty.
template <ExactScalar Scalar>
struct LocalCheck {
  std::optional<Quaternion<Scalar>> witness;
  explicit operator bool() const { return !witness; }
};

/// Tests pointwise solvability at every element of H^{a,b} over F_p, p <= 7,
/// in lexicographic order of (x1, x2, x3, x4). Returns the first failing point.
template <ExactScalar Scalar>
LocalCheck<Scalar> exhaustive_local_check(const LinMap<Scalar>& delta, Parity degree) {
  const AlgebraPtr<Scalar>& algebra = delta.algebra();
  const RingDescriptor& ring = algebra->ring();
  if constexpr (!std::is_same_v<Scalar, ModInt>) {
    throw EnumerationTooLarge("exhaustive check needs a prime field F_p with p <= 7, got " + ring.name());
  } else {
    if (ring.kind() != RingKind::PrimeField || ring.modulus() > kMaxEnumerationPrime) {
      throw EnumerationTooLarge("exhaustive check needs a prime field F_p with p <= 7, got " + ring.name());
    }
    const std::int64_t p = ring.modulus();
    Vec4<Scalar> x;
    for (std::int64_t x1 = 0; x1 < p; ++x1) {
      for (std::int64_t x2 = 0; x2 < p; ++x2) {
        for (std::int64_t x3 = 0; x3 < p; ++x3) {
          for (std::int64_t x4 = 0; x4 < p; ++x4) {
            x << ModInt(x1, p), ModInt(x2, p), ModInt(x3, p), ModInt(x4, p);
            Quaternion<Scalar> point(algebra, x);
            if (!pointwise_solvable(delta, degree, point)) return LocalCheck<Scalar>{point};
          }
        }
      }
    }
    return LocalCheck<Scalar>{};
  }
}

}  // namespace quatsuper
