#include <doctest.h>

#include <random>

#include "quatsuper/random.hpp"
#include "quatsuper/ring.hpp"

using namespace quatsuper;

namespace {

Rational q(const char* s) { return parse_element<Rational>(RingDescriptor::rationals(), s); }

}  // namespace

TEST_CASE("descriptors validate their modulus") {
  CHECK(RingDescriptor::rationals().name() == "Q");
  CHECK(RingDescriptor::prime_field(5).name() == "F_5");
  CHECK(RingDescriptor::residue_ring(9).name() == "Z/9");
  CHECK_THROWS_AS(RingDescriptor::prime_field(2), DomainError);
  CHECK_THROWS_AS(RingDescriptor::prime_field(9), DomainError);
  CHECK_THROWS_AS(RingDescriptor::prime_field(-7), DomainError);
  CHECK_THROWS_AS(RingDescriptor::residue_ring(8), DomainError);
  CHECK_THROWS_AS(RingDescriptor::residue_ring(1), DomainError);
  CHECK_THROWS_AS(RingDescriptor::prime_field(RingDescriptor::kMaxModulus + 2), DomainError);
  CHECK(RingDescriptor::prime_field(2147483647).modulus() == 2147483647);
  CHECK(RingDescriptor::prime_field(7).is_field());
  CHECK_FALSE(RingDescriptor::residue_ring(9).is_field());
  CHECK_FALSE(RingDescriptor::residue_ring(7) == RingDescriptor::prime_field(7));
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(q("1/2") + q("1/3") == q("5/6"));
  CHECK(q("2/3") * q("3/4") == q("1/2"));
  CHECK(*try_invert(q("-4")) == q("-1/4"));
  CHECK_FALSE(try_invert(q("0")).has_value());
  CHECK(half<Rational>(RingDescriptor::rationals()) == q("1/2"));
  CHECK(format_element(q("6/-4")) == "-3/2");
  CHECK(format_element(q("0/7")) == "0");
  CHECK_THROWS_AS(q("1/0"), DomainError);
  CHECK_THROWS_AS(q("x"), DomainError);
  CHECK_THROWS_AS(q(""), DomainError);
}

TEST_CASE("modular arithmetic reduces and inverts") {
  const auto f5 = RingDescriptor::prime_field(5);
  const auto z9 = RingDescriptor::residue_ring(9);
  CHECK(ModInt(3, 5) + ModInt(4, 5) == ModInt(2, 5));
  CHECK(ModInt(3, 9) * ModInt(3, 9) == ModInt(0, 9));
  CHECK(*try_invert(ModInt(2, 9)) == ModInt(5, 9));
  CHECK_FALSE(try_invert(ModInt(3, 9)).has_value());
  CHECK_THROWS_AS(ModInt(1, 9) / ModInt(6, 9), DomainError);
  CHECK(half<ModInt>(f5) == ModInt(3, 5));
  CHECK(half<ModInt>(z9) == ModInt(5, 9));
  CHECK(ModInt(-1, 7).value() == 6);
  CHECK(parse_element<ModInt>(f5, "-1/2") == ModInt(2, 5));
  CHECK(parse_element<ModInt>(f5, "12") == ModInt(2, 5));
  CHECK_THROWS_AS(parse_element<ModInt>(z9, "1/3"), DomainError);
  CHECK_THROWS_AS(parse_element<ModInt>(RingDescriptor::rationals(), "1"), DomainError);
  CHECK_THROWS_AS(parse_element<Rational>(f5, "1"), DomainError);
}

TEST_CASE("large moduli multiply without overflow") {
  const std::int64_t p = 2147483647;
  const ModInt x(p - 1, p);
  CHECK(x * x == ModInt(1, p));
  CHECK(*try_invert(x) == x);
}

TEST_CASE("unbound constants adopt the partner's modulus; bound mismatches throw") {
  const ModInt one(1);
  CHECK_FALSE(one.bound());
  CHECK((ModInt(4, 5) + one) == ModInt(0, 5));
  CHECK((ModInt(4, 5) + one).modulus() == 5);
  CHECK_THROWS_AS(ModInt(1, 5) + ModInt(1, 7), DomainError);
  CHECK_THROWS_AS(ModInt(1, 5).bind(7), DomainError);
  CHECK(ModInt(12).bind(5) == ModInt(2, 5));
}

TEST_CASE("identities hold for random elements") {
  std::mt19937_64 rng(7);
  const auto qring = RingDescriptor::rationals();
  const auto f7 = RingDescriptor::prime_field(7);
  for (int t = 0; t < 100; ++t) {
    const Rational x = random_element<Rational>(qring, rng);
    CHECK(x + Rational(0) == x);
    CHECK(x * Rational(1) == x);
    const ModInt y = random_element<ModInt>(f7, rng);
    CHECK(y + ScalarRing<ModInt>::from_int(f7, 0) == y);
    CHECK(y * ScalarRing<ModInt>::from_int(f7, 1) == y);
    if (!is_zero(y)) CHECK(y * *try_invert(y) == ModInt(1, 7));
  }
}

TEST_CASE("canonical strings survive format -> parse -> format") {
  std::mt19937_64 rng(11);
  const auto qring = RingDescriptor::rationals();
  const auto f5 = RingDescriptor::prime_field(5);
  for (int t = 0; t < 200; ++t) {
    const std::string s = format_element(random_element<Rational>(qring, rng));
    CHECK(format_element(parse_element<Rational>(qring, s)) == s);
    const std::string m = format_element(random_element<ModInt>(f5, rng));
    CHECK(format_element(parse_element<ModInt>(f5, m)) == m);
  }
}
