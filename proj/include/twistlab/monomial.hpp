#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace twl {

std::size_t binomial(long n, long k);

/// Exponent vector over x_0..x_d.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial variable(int num_vars, int index);
  static Monomial one(int num_vars) { return Monomial(std::vector<int>(num_vars, 0)); }

  int num_vars() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const;

  /// Graded first, then larger exponent vector (lex) first:
  /// x0 < x1 < x2 < x0^2 < x0x1 < ... in this order.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string to_string() const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// dim U_n for U = k[x_0..x_d].
inline std::size_t basis_size(int d, int n) { return n < 0 ? 0 : binomial(n + d, d); }

/// The degree-n monomials of k[x_0..x_d] in the fixed order.
std::vector<Monomial> monomial_basis(int d, int n);

/// Position of m inside monomial_basis(m.num_vars() - 1, m.degree()).
std::size_t monomial_index(const Monomial& m);
std::size_t monomial_index(const int* exps, int num_vars, int degree);

}  // namespace twl
