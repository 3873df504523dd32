#pragma once

// Random ring elements and maps for property sweeps.

#include <random>
#include <type_traits>

#include "quatsuper/linear.hpp"

namespace quatsuper {

/// Uniform residues for modular rings; small fractions n/d with |n| <= 9,
/// 1 <= d <= 5 for the rationals.
template <ExactScalar Scalar, class Rng>
Scalar random_element(const RingDescriptor& ring, Rng& rng) {
  if constexpr (std::is_same_v<Scalar, ModInt>) {
    std::uniform_int_distribution<std::int64_t> dist(0, ring.modulus() - 1);
    return ModInt(dist(rng), ring.modulus());
  } else {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    int n = num(rng);
    int d = den(rng);
    return Scalar(n) / Scalar(d);
  }
}

template <ExactScalar Scalar, class Rng>
Vec4<Scalar> random_vec4(const RingDescriptor& ring, Rng& rng) {
  Vec4<Scalar> v;
  for (int p = 0; p < 4; ++p) v(p) = random_element<Scalar>(ring, rng);
  return v;
}

template <ExactScalar Scalar, class Rng>
Quaternion<Scalar> random_quaternion(const AlgebraPtr<Scalar>& algebra, Rng& rng) {
  return Quaternion<Scalar>(algebra, random_vec4<Scalar>(algebra->ring(), rng));
}

template <ExactScalar Scalar, class Rng>
LinMap<Scalar> random_linmap(const AlgebraPtr<Scalar>& algebra, Rng& rng) {
  Mat4<Scalar> m;
  for (int c = 0; c < 4; ++c) m.col(c) = random_vec4<Scalar>(algebra->ring(), rng);
  return LinMap<Scalar>(algebra, m);
}

template <ExactScalar Scalar, class Rng>
BilinMap<Scalar> random_bilinmap(const AlgebraPtr<Scalar>& algebra, Rng& rng) {
  BilinValues<Scalar> v;
  for (int c = 0; c < 16; ++c) v.col(c) = random_vec4<Scalar>(algebra->ring(), rng);
  return BilinMap<Scalar>(algebra, v);
}

}  // namespace quatsuper
