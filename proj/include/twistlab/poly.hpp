#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twistlab/monomial.hpp"
#include "twistlab/scalar.hpp"

namespace twl {

/// A homogeneous element of U_n = k[x_0..x_d]_n, stored sparsely.
///
/// Terms are sorted by the fixed monomial order, pairwise distinct, and carry
/// nonzero coefficients. The zero polynomial still remembers its degree.
class HomogPoly {
 public:
  struct Term {
    Monomial monomial;
    Scalar coeff;
  };

  HomogPoly() = default;
  HomogPoly(int d, int degree);

  static HomogPoly from_terms(int d, int degree, std::vector<Term> terms);
  static HomogPoly from_monomial(const Monomial& m, Scalar coeff = Scalar(1));
  static HomogPoly variable(int d, int index) {
    return from_monomial(Monomial::variable(d + 1, index));
  }
  static HomogPoly constant(int d, Scalar value);
  /// Coordinates over monomial_basis(d, degree).
  static HomogPoly from_dense(int d, int degree, const Vec& coords);

  int d() const { return d_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  Vec to_dense() const;

  HomogPoly operator-() const;
  HomogPoly& operator+=(const HomogPoly& rhs);
  HomogPoly& operator-=(const HomogPoly& rhs);
  HomogPoly& operator*=(const Scalar& c);
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator*(HomogPoly a, const Scalar& c) { return a *= c; }
  friend HomogPoly operator*(const Scalar& c, HomogPoly a) { return a *= c; }
  friend bool operator==(const HomogPoly& a, const HomogPoly& b);

  std::string to_string() const;

 private:
  void check_compatible(const HomogPoly& other) const;

  int d_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

/// The commutative product in U.
HomogPoly poly_mul(const HomogPoly& f, const HomogPoly& g);

/// f evaluated at an explicit coordinate vector (no canonicalization).
Scalar evaluate_at(const HomogPoly& f, std::span<const Scalar> coords);

/// Product of dense coordinate vectors in degrees a and b.
Vec dense_mul(int d, int a, const Vec& f, int b, const Vec& g);

/// Parses `x0 - 2*x1 + 3/2 x0^2*x2`-style text over k[x_0..x_d].
/// Throws std::invalid_argument on syntax errors, out-of-range variables, or
/// inhomogeneous input. A bare "0" parses as the zero form of `zero_degree`.
HomogPoly parse_poly(std::string_view text, int d, int zero_degree = 0);

}  // namespace twl
