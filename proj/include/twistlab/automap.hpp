#pragma once

#include <span>
#include <string>
#include <vector>

#include "twistlab/poly.hpp"
#include "twistlab/scalar.hpp"

namespace twl {

using Matrix = std::vector<Vec>;

/// A point of P^d held by its canonical representative.
///
/// Over Q the representative is integer-primitive with a positive first
/// nonzero coordinate; over F_p the first nonzero coordinate is 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  /// Throws std::invalid_argument when every coordinate is zero.
  explicit ProjPoint(Vec coords);

  int d() const { return static_cast<int>(coords_.size()) - 1; }
  const Vec& coords() const { return coords_; }
  const Scalar& operator[](int i) const { return coords_[i]; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b);
  std::string to_string() const;

 private:
  Vec coords_;
};

Vec canonical_coords(Vec coords);

/// A graded automorphism of U = k[x_0..x_d], given by an invertible
/// (d+1)x(d+1) matrix A acting by x_i -> sum_j A[j][i] x_j.
///
/// With this convention apply_auto(A, apply_auto(B, f)) = apply_auto(AB, f),
/// and (A.f)(P) = f(A^T P).
class AutoMap {
 public:
  AutoMap() = default;
  /// Throws std::invalid_argument for non-square or singular input.
  explicit AutoMap(Matrix matrix);

  static AutoMap identity(int d, const Field& field = Field::rationals());
  /// diag(1, p_1, ..., p_d); the first entry is pinned to 1.
  static AutoMap diagonal(std::span<const Scalar> multipliers);

  int d() const { return static_cast<int>(matrix_.size()) - 1; }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& inverse_matrix() const { return inverse_; }
  bool is_diagonal() const { return diagonal_; }
  bool is_identity() const;

  AutoMap inverse() const;
  /// The map f -> this(other(f)), i.e. matrix product this * other.
  AutoMap compose(const AutoMap& other) const;
  AutoMap power(long k) const;

  HomogPoly apply(const HomogPoly& f) const;
  Vec apply_dense(int degree, const Vec& coords) const;

  friend bool operator==(const AutoMap& a, const AutoMap& b) { return a.matrix_ == b.matrix_; }

 private:
  AutoMap(Matrix matrix, Matrix inverse);

  Matrix matrix_;
  Matrix inverse_;
  bool diagonal_ = false;
};

inline HomogPoly apply_auto(const AutoMap& a, const HomogPoly& f) { return a.apply(f); }

/// Value at the canonical representative.
Scalar evaluate(const HomogPoly& f, const ProjPoint& p);

/// A^T P, so that evaluate(apply_auto(A, f), P) vanishes iff
/// evaluate(f, point_image(A, P)) does.
ProjPoint point_image(const AutoMap& a, const ProjPoint& p);

/// (A^{-1})^T P. Repeated application from c walks the orbit c_1, c_2, ...
ProjPoint pullback_point(const AutoMap& a, const ProjPoint& p);

Matrix matrix_mul(const Matrix& a, const Matrix& b);
/// Throws std::invalid_argument when singular.
Matrix matrix_inverse(const Matrix& a);

}  // namespace twl
