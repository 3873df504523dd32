#pragma once

// Exact coefficient rings: rationals, prime fields F_p and residue rings Z/nZ
// (p, n odd). Both scalar types plug into Eigen as custom scalars.

#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/traits/is_byte_container.hpp>

#include "quatsuper/errors.hpp"

namespace quatsuper {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

enum class RingKind { Rationals, PrimeField, ResidueRing };

class RingDescriptor {
 public:
  static constexpr std::int64_t kMaxModulus = 2147483647;

  static RingDescriptor rationals() { return RingDescriptor(RingKind::Rationals, 0); }
  /// Throws DomainError unless p is an odd prime.
  static RingDescriptor prime_field(std::int64_t p);
  /// Throws DomainError unless n is odd and n >= 3.
  static RingDescriptor residue_ring(std::int64_t n);

  RingKind kind() const { return kind_; }
  /// 0 for the rationals.
  std::int64_t modulus() const { return modulus_; }
  bool is_field() const { return kind_ != RingKind::ResidueRing; }
  bool is_modular() const { return kind_ != RingKind::Rationals; }
  std::string name() const;

  bool operator==(const RingDescriptor&) const = default;

 private:
  RingDescriptor(RingKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_;
  std::int64_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const RingDescriptor& ring);

bool is_prime(std::int64_t n);

/// Residue class modulo a runtime modulus, stored as the least non-negative
/// representative.
///
/// An element constructed without a modulus is an unbound integer constant
/// (modulus() == 0). Eigen default-constructs scalars and builds literals like
/// Scalar(0) and Scalar(1) with no ring context; an unbound constant takes the
/// modulus of whatever bound element it is combined with. Combining two bound
/// elements with different moduli throws DomainError.
class ModInt {
 public:
  ModInt() = default;
  ModInt(long long value) : value_(value) {}  // NOLINT: literal conversion for Eigen
  ModInt(long long value, std::int64_t modulus);

  std::int64_t value() const { return value_; }
  std::int64_t modulus() const { return modulus_; }
  bool bound() const { return modulus_ != 0; }

  /// Same residue bound to `modulus`; throws if already bound elsewhere.
  ModInt bind(std::int64_t modulus) const;

  ModInt operator-() const;
  ModInt& operator+=(const ModInt& rhs);
  ModInt& operator-=(const ModInt& rhs);
  ModInt& operator*=(const ModInt& rhs);
  /// Multiplies by the inverse of rhs; throws DomainError if rhs is not a unit.
  ModInt& operator/=(const ModInt& rhs);

  friend ModInt operator+(ModInt lhs, const ModInt& rhs) { return lhs += rhs; }
  friend ModInt operator-(ModInt lhs, const ModInt& rhs) { return lhs -= rhs; }
  friend ModInt operator*(ModInt lhs, const ModInt& rhs) { return lhs *= rhs; }
  friend ModInt operator/(ModInt lhs, const ModInt& rhs) { return lhs /= rhs; }
  friend bool operator==(const ModInt& lhs, const ModInt& rhs);

 private:
  static std::int64_t common_modulus(const ModInt& x, const ModInt& y);
  static std::int64_t reduce(long long value, std::int64_t modulus);

  std::int64_t value_ = 0;
  std::int64_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ModInt& x);

// --- uniform scalar interface -------------------------------------------

bool is_zero(const Rational& x);
bool is_zero(const ModInt& x);

/// nullopt signals NotAUnit.
std::optional<Rational> try_invert(const Rational& x);
std::optional<ModInt> try_invert(const ModInt& x);

/// Canonical string: "num/den" or "num" for rationals, decimal residue otherwise.
std::string format_element(const Rational& x);
std::string format_element(const ModInt& x);

/// Per-scalar construction bound to a ring descriptor.
template <class Scalar>
struct ScalarRing;

template <>
struct ScalarRing<Rational> {
  static bool accepts(const RingDescriptor& ring) { return ring.kind() == RingKind::Rationals; }
  static Rational from_int(const RingDescriptor&, long long v) { return Rational(v); }
  static Rational coerce(const RingDescriptor&, const Rational& x) { return x; }
  static Rational parse(const RingDescriptor& ring, std::string_view text);
};

template <>
struct ScalarRing<ModInt> {
  static bool accepts(const RingDescriptor& ring) { return ring.is_modular(); }
  static ModInt from_int(const RingDescriptor& ring, long long v) { return ModInt(v, ring.modulus()); }
  static ModInt coerce(const RingDescriptor& ring, const ModInt& x) { return x.bind(ring.modulus()); }
  /// Accepts integers and fractions "u/v" with v a unit.
  static ModInt parse(const RingDescriptor& ring, std::string_view text);
};

template <class Scalar>
concept ExactScalar = requires(const RingDescriptor& ring, const Scalar& x) {
  { ScalarRing<Scalar>::from_int(ring, 1) } -> std::same_as<Scalar>;
  { is_zero(x) } -> std::same_as<bool>;
  { try_invert(x) } -> std::same_as<std::optional<Scalar>>;
  { format_element(x) } -> std::same_as<std::string>;
};

/// Parses `text` as an element of `ring`. Throws DomainError on malformed
/// input or a scalar type that does not represent `ring`.
template <ExactScalar Scalar>
Scalar parse_element(const RingDescriptor& ring, std::string_view text) {
  if (!ScalarRing<Scalar>::accepts(ring)) throw DomainError("scalar type does not represent " + ring.name());
  return ScalarRing<Scalar>::parse(ring, text);
}

/// The inverse of 2, which exists for every supported descriptor.
template <ExactScalar Scalar>
Scalar half(const RingDescriptor& ring) {
  return *try_invert(ScalarRing<Scalar>::from_int(ring, 2));
}

}  // namespace quatsuper

namespace Eigen {

template <>
struct NumTraits<quatsuper::ModInt> : GenericNumTraits<quatsuper::ModInt> {
  using Real = quatsuper::ModInt;
  using NonInteger = quatsuper::ModInt;
  using Nested = quatsuper::ModInt;
  using Literal = quatsuper::ModInt;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

// Eigen 3.4 declares `const_iterator = void` on non-vector matrices and
// expressions, which breaks Boost.Multiprecision's byte-container probe during
// overload resolution of mixed number/matrix operators.
namespace boost::multiprecision::detail {

template <class S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : boost::false_type {};
template <class Op, class L, class R>
struct is_byte_container<Eigen::CwiseBinaryOp<Op, L, R>> : boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseUnaryOp<Op, X>> : boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseNullaryOp<Op, X>> : boost::false_type {};
template <class L, class R, int O>
struct is_byte_container<Eigen::Product<L, R, O>> : boost::false_type {};
template <class X, int R, int C, bool I>
struct is_byte_container<Eigen::Block<X, R, C, I>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::Transpose<X>> : boost::false_type {};

}  // namespace boost::multiprecision::detail
