#include "twistlab/scalar.hpp"

#include <cctype>

namespace twl {

namespace {

std::uint32_t inverse_mod(std::uint32_t value, std::uint32_t modulus) {
  if (value == 0) {
    throw std::domain_error("inverse of zero");
  }
  // extended Euclid over signed 64-bit
  std::int64_t a = value, b = modulus, x0 = 1, x1 = 0;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  std::int64_t r = x0 % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Scalar::Scalar(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Scalar Scalar::residue(std::uint64_t value, std::uint32_t modulus) {
  if (modulus == 0) {
    throw std::invalid_argument("residue modulus must be nonzero");
  }
  Scalar s;
  s.modulus_ = modulus;
  s.residue_ = static_cast<std::uint32_t>(value % modulus);
  return s;
}

const mpq_class& Scalar::rational() const {
  if (!is_rational()) {
    throw FieldMismatch("rational value requested from a prime-field scalar");
  }
  return q_;
}

std::uint32_t Scalar::residue() const {
  if (is_rational()) {
    throw FieldMismatch("residue requested from a rational scalar");
  }
  return residue_;
}

bool Scalar::is_zero() const { return is_rational() ? sgn(q_) == 0 : residue_ == 0; }

bool Scalar::is_one() const { return is_rational() ? q_ == 1 : residue_ == 1; }

std::uint32_t Scalar::reduce_into(const mpq_class& q, std::uint32_t modulus) {
  const unsigned long den = mpz_fdiv_ui(q.get_den_mpz_t(), modulus);
  if (den == 0) {
    throw FieldMismatch("denominator " + q.get_den().get_str() + " vanishes mod " +
                        std::to_string(modulus));
  }
  const unsigned long num = mpz_fdiv_ui(q.get_num_mpz_t(), modulus);
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(num) * inverse_mod(static_cast<std::uint32_t>(den), modulus)) %
      modulus);
}

void Scalar::promote_to(std::uint32_t modulus) {
  residue_ = reduce_into(q_, modulus);
  modulus_ = modulus;
  q_ = 0;
}

void Scalar::align(Scalar& other) {
  if (modulus_ == other.modulus_) return;
  if (modulus_ == 0) {
    promote_to(other.modulus_);
  } else if (other.modulus_ == 0) {
    other.promote_to(modulus_);
  } else {
    throw FieldMismatch("scalars from F_" + std::to_string(modulus_) + " and F_" +
                        std::to_string(other.modulus_));
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (is_rational()) {
    r.q_ = -q_;
  } else if (residue_ != 0) {
    r.residue_ = modulus_ - residue_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  Scalar other = rhs;
  align(other);
  if (is_rational()) {
    q_ += other.q_;
  } else {
    residue_ = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(residue_) + other.residue_) % modulus_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  Scalar other = rhs;
  align(other);
  if (is_rational()) {
    q_ *= other.q_;
  } else {
    residue_ = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(residue_) * other.residue_) % modulus_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  Scalar other = rhs;
  align(other);
  return *this *= other.inverse();
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.modulus_ == rhs.modulus_) {
    return lhs.is_rational() ? lhs.q_ == rhs.q_ : lhs.residue_ == rhs.residue_;
  }
  Scalar a = lhs, b = rhs;
  a.align(b);
  return a == b;
}

Scalar Scalar::inverse() const {
  if (is_zero()) {
    throw std::domain_error("division by zero scalar");
  }
  Scalar r = *this;
  if (is_rational()) {
    r.q_ = 1 / q_;
  } else {
    r.residue_ = inverse_mod(residue_, modulus_);
  }
  return r;
}

Scalar Scalar::pow(long exponent) const {
  Scalar base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  Scalar result = Scalar(1);
  if (!is_rational()) result = Scalar::residue(1, modulus_);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  if (!is_rational()) return std::to_string(residue_);
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p < 3 || p >= (1U << 31) || !is_prime_u32(p)) {
    throw std::invalid_argument("field modulus must be an odd prime below 2^31, got " +
                                std::to_string(p));
  }
  return Field(p);
}

Scalar Field::from_int(long value) const {
  if (!is_prime()) return Scalar(value);
  long r = value % static_cast<long>(modulus_);
  if (r < 0) r += modulus_;
  return Scalar::residue(static_cast<std::uint64_t>(r), modulus_);
}

Scalar Field::from_rational(const mpq_class& value) const {
  Scalar s(value);
  if (!is_prime()) return s;
  return s * Scalar::residue(1, modulus_);
}

Scalar Field::from(const Scalar& value) const {
  if (value.modulus() == modulus_) return value;
  if (!value.is_rational()) {
    throw FieldMismatch("cannot move an F_" + std::to_string(value.modulus()) +
                        " scalar into " + name());
  }
  return from_rational(value.rational());
}

std::string Field::name() const {
  return is_prime() ? "prime:" + std::to_string(modulus_) : "rational";
}

mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpq_class q{mpz_class(num), mpz_class(den)};
  if (sgn(q.get_den()) == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace twl
