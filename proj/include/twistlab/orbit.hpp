#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "twistlab/automap.hpp"

namespace twl {

/// The orbit c_n = phi^{-n}(c) for -radius <= n <= radius.
struct OrbitWindow {
  ProjPoint center;
  int radius = 0;
  std::vector<ProjPoint> points;  // points[n + radius] = c_n

  const ProjPoint& at(int n) const;
};

OrbitWindow orbit_points(const AutoMap& phi, const ProjPoint& c, int radius);

/// Pairwise distinct as projective points.
bool distinct_window(const OrbitWindow& window);

struct IndependenceCertificate {
  bool independent = true;
  /// Integer relation with prod p_i^{a_i} = 1; empty when independent.
  /// The first nonzero entry is positive.
  std::vector<long> relation;
  /// Basis of the full relation lattice (same normalization).
  std::vector<std::vector<long>> relation_basis;
  /// Primes indexing the rows of the exponent matrix.
  std::vector<std::uint64_t> primes;
  std::vector<std::vector<long>> exponents;  // exponents[prime][i]
};

class FactorBoundExceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Decides whether nonzero rationals p_1..p_d generate a free abelian group
/// of rank d under multiplication. Numerators and denominators are factored
/// by trial division up to prime_bound; a cofactor that cannot be certified
/// prime within the bound raises FactorBoundExceeded. A zero entry raises
/// std::invalid_argument.
IndependenceCertificate multiplicative_independence(std::span<const mpq_class> p,
                                                    std::uint64_t prime_bound = 1000000);

/// Exact check of prod p_i^{a_i} == 1.
bool verify_relation(std::span<const mpq_class> p, std::span<const long> relation);

/// Rank of the matrix of degree-m monomials evaluated at the orbit points
/// c_i for i in indices.
std::size_t general_position_rank(const Field& field, const OrbitWindow& window, int m,
                                  std::span<const int> indices);

}  // namespace twl
