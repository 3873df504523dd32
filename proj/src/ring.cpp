#include "quatsuper/ring.hpp"

#include <charconv>
#include <numeric>

namespace quatsuper {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_big(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) throw DomainError("malformed ring element '" + std::string(whole) + "'");
  bool negative = s.front() == '-';
  if (s.front() == '-' || s.front() == '+') s.remove_prefix(1);
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

// Splits "num/den" (den optional) into two integer literals.
std::pair<BigInt, BigInt> parse_fraction(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return {parse_big(s, text), BigInt(1)};
  BigInt den = parse_big(trim(s.substr(slash + 1)), text);
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return {parse_big(trim(s.substr(0, slash)), text), den};
}

std::int64_t reduce_big(const BigInt& value, std::int64_t modulus) {
  BigInt r = value % modulus;
  if (r < 0) r += modulus;
  return r.convert_to<std::int64_t>();
}

}  // namespace

// --- RingDescriptor ------------------------------------------------------

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

RingDescriptor RingDescriptor::prime_field(std::int64_t p) {
  if (p > kMaxModulus) throw DomainError("modulus too large: " + std::to_string(p));
  if (p == 2) throw DomainError("characteristic 2 is not supported (2 must be invertible)");
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not an odd prime");
  return RingDescriptor(RingKind::PrimeField, p);
}

RingDescriptor RingDescriptor::residue_ring(std::int64_t n) {
  if (n > kMaxModulus) throw DomainError("modulus too large: " + std::to_string(n));
  if (n < 3 || n % 2 == 0) throw DomainError("residue ring modulus must be odd and >= 3, got " + std::to_string(n));
  return RingDescriptor(RingKind::ResidueRing, n);
}

std::string RingDescriptor::name() const {
  switch (kind_) {
    case RingKind::Rationals:
      return "Q";
    case RingKind::PrimeField:
      return "F_" + std::to_string(modulus_);
    case RingKind::ResidueRing:
      return "Z/" + std::to_string(modulus_);
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const RingDescriptor& ring) { return os << ring.name(); }

// --- ModInt --------------------------------------------------------------

std::int64_t ModInt::reduce(long long value, std::int64_t modulus) {
  long long r = value % modulus;
  return r < 0 ? r + modulus : r;
}

ModInt::ModInt(long long value, std::int64_t modulus) : value_(reduce(value, modulus)), modulus_(modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
}

ModInt ModInt::bind(std::int64_t modulus) const {
  if (modulus_ == modulus) return *this;
  if (bound()) {
    throw DomainError("element of Z/" + std::to_string(modulus_) + " used in Z/" + std::to_string(modulus));
  }
  return ModInt(value_, modulus);
}

std::int64_t ModInt::common_modulus(const ModInt& x, const ModInt& y) {
  if (x.modulus_ == y.modulus_) return x.modulus_;
  if (!x.bound()) return y.modulus_;
  if (!y.bound()) return x.modulus_;
  throw DomainError("ring mismatch: Z/" + std::to_string(x.modulus_) + " vs Z/" + std::to_string(y.modulus_));
}

ModInt ModInt::operator-() const {
  ModInt r = *this;
  r.value_ = bound() ? (value_ == 0 ? 0 : modulus_ - value_) : -value_;
  return r;
}

ModInt& ModInt::operator+=(const ModInt& rhs) {
  std::int64_t m = common_modulus(*this, rhs);
  if (m == 0) {
    value_ += rhs.value_;
    return *this;
  }
  *this = bind(m);
  std::int64_t s = value_ + reduce(rhs.value_, m);
  value_ = s >= m ? s - m : s;
  return *this;
}

ModInt& ModInt::operator-=(const ModInt& rhs) { return *this += -rhs; }

ModInt& ModInt::operator*=(const ModInt& rhs) {
  std::int64_t m = common_modulus(*this, rhs);
  if (m == 0) {
    value_ *= rhs.value_;
    return *this;
  }
  *this = bind(m);
  value_ = static_cast<std::int64_t>((static_cast<__int128>(value_) * reduce(rhs.value_, m)) % m);
  return *this;
}

ModInt& ModInt::operator/=(const ModInt& rhs) {
  std::int64_t m = common_modulus(*this, rhs);
  if (m == 0) throw DomainError("division of unbound integer constants");
  auto inv = try_invert(rhs.bind(m));
  if (!inv) throw DomainError(std::to_string(rhs.value_) + " is not a unit mod " + std::to_string(m));
  return *this *= *inv;
}

bool operator==(const ModInt& lhs, const ModInt& rhs) {
  std::int64_t m = ModInt::common_modulus(lhs, rhs);
  if (m == 0) return lhs.value_ == rhs.value_;
  return ModInt::reduce(lhs.value_, m) == ModInt::reduce(rhs.value_, m);
}

std::ostream& operator<<(std::ostream& os, const ModInt& x) { return os << format_element(x); }

// --- scalar interface ----------------------------------------------------

bool is_zero(const Rational& x) { return x.is_zero(); }
bool is_zero(const ModInt& x) { return x.value() == 0; }

std::optional<Rational> try_invert(const Rational& x) {
  if (x.is_zero()) return std::nullopt;
  return Rational(1) / x;
}

std::optional<ModInt> try_invert(const ModInt& x) {
  if (!x.bound()) {
    if (x.value() == 1 || x.value() == -1) return x;
    return std::nullopt;
  }
  // Extended Euclid on (value, modulus).
  std::int64_t m = x.modulus();
  std::int64_t old_r = x.value(), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  return ModInt(old_s, m);
}

std::string format_element(const Rational& x) { return x.str(); }

std::string format_element(const ModInt& x) { return std::to_string(x.value()); }

Rational ScalarRing<Rational>::parse(const RingDescriptor&, std::string_view text) {
  auto [num, den] = parse_fraction(text);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

ModInt ScalarRing<ModInt>::parse(const RingDescriptor& ring, std::string_view text) {
  auto [num, den] = parse_fraction(text);
  ModInt n(reduce_big(num, ring.modulus()), ring.modulus());
  if (den == 1) return n;
  auto inv = try_invert(ModInt(reduce_big(den, ring.modulus()), ring.modulus()));
  if (!inv) throw DomainError("denominator of '" + std::string(text) + "' is not a unit in " + ring.name());
  return n * *inv;
}

}  // namespace quatsuper
