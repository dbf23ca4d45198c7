#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/elimination.hpp"
#include "twistlab/poly.hpp"
#include "twistlab/scalar.hpp"

namespace twl {

class AmbientMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The space a graded piece lives in: U_n, or U_m (x) U_m for Segre pieces.
/// Segre coordinates are indexed i * dim U_m + j for the pair (e_i, e_j).
struct Ambient {
  enum class Shape { kPoly, kSegre };

  Shape shape = Shape::kPoly;
  int d = 0;
  int degree = 0;
  std::size_t dim = 1;

  static Ambient poly(int d, int n);
  static Ambient segre(int d, int m);

  friend bool operator==(const Ambient&, const Ambient&) = default;
  std::string to_string() const;
};

/// A subspace of one graded piece, held as its reduced row-echelon basis.
class GradedSubspace {
 public:
  GradedSubspace() = default;
  /// The zero subspace.
  GradedSubspace(Ambient ambient, Field field);

  static GradedSubspace span(const Ambient& ambient, const Field& field,
                             const std::vector<Vec>& vectors);
  static GradedSubspace span(const Field& field, int d, int degree,
                             const std::vector<HomogPoly>& polys);
  static GradedSubspace full(const Ambient& ambient, const Field& field);
  /// Adopts rows already in reduced row-echelon form. The echelon
  /// conditions are checked and violations throw std::invalid_argument.
  static GradedSubspace from_rref(const Ambient& ambient, const Field& field, Echelon echelon);

  const Ambient& ambient() const { return ambient_; }
  const Field& field() const { return field_; }
  std::size_t dim() const { return rows_.size(); }
  std::size_t codim() const { return ambient_.dim - rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Ascending non-pivot columns; they index a basis of ambient / this.
  std::vector<std::size_t> free_columns() const;
  /// Basis rows as forms (polynomial ambients only).
  std::vector<HomogPoly> basis_polys() const;

  /// Normal form of v modulo this subspace: zero in every pivot column.
  Vec reduce(const Vec& v) const;
  /// reduce(v) restricted to free_columns().
  Vec quotient_coords(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const GradedSubspace& other) const;

  friend bool operator==(const GradedSubspace& a, const GradedSubspace& b);

  /// One basis row per line, exact rationals as a/b.
  std::string to_csv() const;

 private:
  Ambient ambient_;
  Field field_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

GradedSubspace sum(const GradedSubspace& v, const GradedSubspace& w);
/// Kernel of the stacked system [V | -W].
GradedSubspace intersect(const GradedSubspace& v, const GradedSubspace& w);
bool member(const Vec& v, const GradedSubspace& space);
/// dim V - dim W; throws std::invalid_argument unless W is contained in V.
std::size_t quotient_dim(const GradedSubspace& v, const GradedSubspace& w);

/// Span of all commutative products of basis vectors, V in U_a and W in U_b.
GradedSubspace product_span(const GradedSubspace& v, const GradedSubspace& w);

/// { x in U_n : g x lies in target for every g in gens }.
/// All gens share one degree a, and target sits in U_{a+n}.
GradedSubspace colon_piece(const Field& field, std::span<const HomogPoly> gens,
                           const GradedSubspace& target, int n);

}  // namespace twl
