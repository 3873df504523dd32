#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "quatsuper/biderivations.hpp"
#include "quatsuper/random.hpp"

using namespace quatsuper;

namespace {

const RingDescriptor kQ = RingDescriptor::rationals();

template <class S>
Quaternion<S> e(const AlgebraPtr<S>& alg, int p) {
  return Quaternion<S>::basis(alg, p);
}

template <class S>
oracle::Table<S> table_of(const BilinMap<S>& b) {
  oracle::Table<S> t(4, std::vector<Vec4<S>>(4));
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) t[p][q] = b.value(p, q);
  }
  return t;
}

}  // namespace

TEST_CASE("canonical family values") {
  const auto alg = oracle::algebra<Rational>(kQ, 2, 3);
  const auto i = e(alg, 1), j = e(alg, 2), k = e(alg, 3);
  const auto b = canonical_family(alg, Rational(1));
  CHECK(eval_bilinear(b, i, j) == k);
  CHECK(eval_bilinear(b, j, i) == Rational(-1) * k);
  CHECK(eval_bilinear(b, k, k) == Rational(-6) * e(alg, 0));
  CHECK(eval_bilinear(b, j, j) == Rational(-3) * e(alg, 0));
  CHECK(canonical_lambda(canonical_family(alg, Rational(7, 2))) == Rational(7, 2));
}

TEST_CASE_TEMPLATE("canonical family is half the super bracket", S, Rational, ModInt) {
  const auto ring = std::is_same_v<S, Rational> ? kQ : RingDescriptor::prime_field(7);
  const auto alg = oracle::algebra<S>(ring, 3, 5);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const S lambda = random_element<S>(ring, rng);
    const auto x = random_quaternion(alg, rng), y = random_quaternion(alg, rng);
    const auto expected = (lambda * alg->half()) * lie_super(x, y);
    CHECK(eval_bilinear(canonical_family(alg, lambda), x, y) == expected);
    CHECK(canonical_eval(lambda, x, y) == expected);
  }
}

TEST_CASE("canonical_eval on basis pairs") {
  const auto alg = oracle::algebra<Rational>(kQ, 2, 3);
  const auto i = e(alg, 1), j = e(alg, 2), k = e(alg, 3);
  CHECK(canonical_eval(Rational(1), i, j) == k);
  CHECK(canonical_eval(Rational(1), k, k) == Rational(-6) * e(alg, 0));
  CHECK(canonical_eval(Rational(1), j, j) == Rational(-3) * e(alg, 0));
  std::mt19937_64 rng(1);
  CHECK(canonical_eval(Rational(0), random_quaternion(alg, rng), random_quaternion(alg, rng)).is_zero());
}

TEST_CASE("identity check") {
  const auto alg = oracle::algebra<Rational>(kQ, 2, 3);
  CHECK(is_super_biderivation(BilinMap<Rational>::zero(alg), Parity::Even));
  CHECK(is_super_biderivation(BilinMap<Rational>::zero(alg), Parity::Odd));
  CHECK(is_super_biderivation(canonical_family(alg, Rational(1)), Parity::Even));
  CHECK(oracle::biderivation_holds(alg->a(), alg->b(), table_of(canonical_family(alg, Rational(1))), 0));

  // The multiplication table itself is not a biderivation.
  BilinMap<Rational> mult = BilinMap<Rational>::zero(alg);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) mult.set_value(p, q, qmul(e(alg, p), e(alg, q)).coeffs());
  }
  auto check = is_super_biderivation(mult, Parity::Even);
  REQUIRE_FALSE(check);
  CHECK(check.violation->identity == BiderivationViolation::Identity::L1);
  CHECK(check.violation->x == 0);
  CHECK(check.violation->y == 0);
  CHECK(check.violation->z == 0);
  CHECK_FALSE(oracle::biderivation_holds(alg->a(), alg->b(), table_of(mult), 0));

  auto wrong_degree = is_super_biderivation(canonical_family(alg, Rational(1)), Parity::Odd);
  REQUIRE_FALSE(wrong_degree);
  CHECK(wrong_degree.violation->identity == BiderivationViolation::Identity::Degree);
}

TEST_CASE("identity check agrees with the independent oracle on random maps") {
  const auto alg = oracle::algebra<ModInt>(RingDescriptor::prime_field(3), 1, 2);
  std::mt19937_64 rng(44);
  int positives = 0;
  for (int t = 0; t < 200; ++t) {
    BilinMap<ModInt> b = t % 2 ? random_bilinmap(alg, rng) : canonical_family(alg, random_element<ModInt>(alg->ring(), rng));
    if (t % 4 == 2) {
      BilinValues<ModInt> v = b.values();
      v(static_cast<int>(rng() % 4), static_cast<int>(rng() % 16)) += ModInt(1, 3);
      b = BilinMap<ModInt>(alg, v);
    }
    for (Parity deg : {Parity::Even, Parity::Odd}) {
      const bool ours = static_cast<bool>(is_super_biderivation(b, deg));
      CHECK(ours == oracle::biderivation_holds(alg->a(), alg->b(), table_of(b), bit(deg)));
      positives += ours;
    }
  }
  CHECK(positives > 0);
}

TEST_CASE("symmetry split") {
  const auto alg = oracle::algebra<Rational>(kQ, 2, 3);
  auto [skew, sym] = symmetry_split(canonical_family(alg, Rational(1)));
  CHECK(skew == canonical_family(alg, Rational(1)));
  CHECK(sym.is_zero());

  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto b = random_bilinmap(alg, rng);
    auto [s, y] = symmetry_split(b);
    CHECK(BilinMap<Rational>(alg, s.values() + y.values()) == b);
    auto [s2, y2] = symmetry_split(y);
    CHECK(s2.is_zero());
    CHECK(y2 == y);
  }
}

TEST_CASE("solver dimensions") {
  const auto alg = oracle::algebra<Rational>(kQ, 1, 1);
  CHECK(solve_biderivations(alg, {Parity::Even, Symmetry::SuperSkew}).dim() == 1);
  CHECK(solve_biderivations(alg, {Parity::Odd, Symmetry::Any}).dim() == 0);

  const auto f7 = oracle::algebra<ModInt>(RingDescriptor::prime_field(7), 2, 3);
  auto any = solve_biderivations(f7, {Parity::Even, Symmetry::Any});
  REQUIRE(any.dim() == 1);
  BilinMap<ModInt> basis = bilinmap_from_flat(f7, any.basis[0]);
  CHECK(basis == canonical_family(f7, canonical_lambda(basis)));
  CHECK_THROWS_AS(solve_biderivations(oracle::algebra<ModInt>(RingDescriptor::residue_ring(9), 1, 1),
                                      {Parity::Even, Symmetry::Any}),
                  UnsupportedRing);
}

TEST_CASE("biderivations by brute force over F_3") {
  // Maps supported on the canonical pattern plus four further grade-compatible
  // slots; the independent oracle must accept exactly the multiples of the
  // canonical family.
  const auto alg = oracle::algebra<ModInt>(RingDescriptor::prime_field(3), 1, 2);
  const std::vector<std::tuple<int, int, int>> slots{{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {3, 1, 2}, {2, 2, 0},
                                                     {3, 3, 0}, {0, 0, 0}, {1, 1, 0}, {2, 3, 1}, {0, 2, 2}};
  std::int64_t total = 1;
  for (std::size_t s = 0; s < slots.size(); ++s) total *= 3;
  int found = 0;
  for (std::int64_t code = 0; code < total; ++code) {
    oracle::Table<ModInt> t(4, std::vector<Vec4<ModInt>>(4, Vec4<ModInt>::Constant(ModInt(0, 3))));
    std::int64_t c = code;
    for (auto [p, q, comp] : slots) {
      t[p][q](comp) = ModInt(c % 3, 3);
      c /= 3;
    }
    if (!oracle::biderivation_holds(alg->a(), alg->b(), t, 0)) continue;
    ++found;
    BilinMap<ModInt> b = BilinMap<ModInt>::zero(alg);
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) b.set_value(p, q, t[p][q]);
    }
    CHECK(b == canonical_family(alg, canonical_lambda(b)));
  }
  CHECK(found == 3);
}

TEST_CASE("real-part coefficient adjudication") {
  const auto alg = oracle::algebra<Rational>(kQ, 2, 3);
  auto adj = adjudicate_real_part(alg);
  CHECK(adj.certified == Rational(-3));
  CHECK(adj.certified_x4y4 == Rational(-6));
  CHECK(adj.displayed == Rational(-6));
  CHECK_FALSE(adj.displayed_certified);
  CHECK(adj.consistent_with_eval);

  auto unit_a = adjudicate_real_part(oracle::algebra<Rational>(kQ, 1, 5));
  CHECK(unit_a.displayed_certified);
}

TEST_CASE("slices of a biderivation") {
  const auto alg = oracle::algebra<Rational>(kQ, 2, 3);
  const auto b = canonical_family(alg, Rational(1));
  for (int p = 0; p < 4; ++p) {
    const Parity deg = basis_parity(p);
    CHECK(is_superderivation(left_slice(b, p), deg));
    CHECK(is_superderivation(twisted_right_slice(b, p), deg));
    CHECK(oracle::leibniz_holds(alg->a(), alg->b(), left_slice(b, p).matrix(), bit(deg)));
  }
  // Even arguments: the plain right slice is the twisted one.
  CHECK(right_slice(b, 1) == twisted_right_slice(b, 1));
  CHECK(is_superderivation(right_slice(b, 1), Parity::Even));
  // Odd arguments: without the sign twist the right slice fails.
  CHECK_FALSE(is_superderivation(right_slice(b, 2), Parity::Odd));
  CHECK_FALSE(is_superderivation(right_slice(b, 3), Parity::Odd));
}
