#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twl {

/// Raised when two scalars from different fields meet, or a rational cannot
/// be reduced into a prime field (denominator divisible by the modulus).
class FieldMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exact field element.
///
/// Rational mode holds an `mpq_class` kept in lowest terms with a positive
/// denominator. Prime mode holds a residue in [0, p) together with p. A
/// rational scalar combined with a prime scalar is reduced into the prime
/// field, so integer literals work in either mode.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class value);

  static Scalar residue(std::uint64_t value, std::uint32_t modulus);

  bool is_rational() const { return modulus_ == 0; }
  std::uint32_t modulus() const { return modulus_; }
  const mpq_class& rational() const;
  std::uint32_t residue() const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

  Scalar inverse() const;
  Scalar pow(long exponent) const;

  /// "a", "a/b" in rational mode; the residue in prime mode.
  std::string to_string() const;

 private:
  static std::uint32_t reduce_into(const mpq_class& q, std::uint32_t modulus);
  void promote_to(std::uint32_t modulus);
  void align(Scalar& other);

  mpq_class q_;
  std::uint32_t modulus_ = 0;
  std::uint32_t residue_ = 0;
};

/// The field a computation runs over: Q (modulus 0) or F_p.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field{}; }
  /// Odd prime below 2^31; throws std::invalid_argument otherwise.
  static Field prime(std::uint32_t p);

  bool is_prime() const { return modulus_ != 0; }
  std::uint32_t modulus() const { return modulus_; }

  Scalar zero() const { return from_int(0); }
  Scalar one() const { return from_int(1); }
  Scalar from_int(long value) const;
  Scalar from_rational(const mpq_class& value) const;
  Scalar from(const Scalar& value) const;

  /// "rational" or "prime:<p>".
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t modulus) : modulus_(modulus) {}
  std::uint32_t modulus_ = 0;
};

/// Dense coordinate vector over a fixed basis.
using Vec = std::vector<Scalar>;

/// Parses "a", "-a", "a/b" into a reduced rational. Throws std::invalid_argument.
mpq_class parse_rational(std::string_view text);

bool is_prime_u32(std::uint32_t n);

}  // namespace twl
