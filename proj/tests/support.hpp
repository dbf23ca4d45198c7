#pragma once

// Independent oracles for the unit tests. Nothing here calls the library's
// elimination code, so agreement with it is meaningful.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "twistlab/automap.hpp"
#include "twistlab/monomial.hpp"
#include "twistlab/poly.hpp"
#include "twistlab/scalar.hpp"

namespace twl::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(977);
  return gen;
}

inline long small_int(long lo, long hi) {
  return lo + static_cast<long>(rng()() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Scalar random_scalar(const Field& f, long bound = 9) {
  if (f.is_prime()) return f.from_int(small_int(0, static_cast<long>(f.modulus()) - 1));
  long den = small_int(1, 4);
  return f.from_rational(mpq_class(small_int(-bound, bound), den));
}

inline HomogPoly random_poly(int d, int degree, const Field& f, double density = 0.6) {
  std::vector<HomogPoly::Term> terms;
  for (const auto& m : monomial_basis(d, degree)) {
    if (std::uniform_real_distribution<double>(0, 1)(rng()) > density) continue;
    terms.push_back({m, f.from_int(small_int(-5, 5))});
  }
  return HomogPoly::from_terms(d, degree, std::move(terms));
}

inline std::vector<Vec> random_matrix(const Field& f, std::size_t rows, std::size_t cols, long bound = 5) {
  std::vector<Vec> m(rows, Vec(cols));
  for (auto& r : m) {
    for (auto& x : r) x = f.from_int(small_int(-bound, bound));
  }
  return m;
}

/// Textbook Gauss-Jordan on mpq_class; the reference RREF.
inline std::vector<std::vector<mpq_class>> naive_rref(std::vector<std::vector<mpq_class>> a) {
  std::size_t row = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    const mpq_class inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const mpq_class f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    ++row;
  }
  a.resize(row);
  return a;
}

inline std::vector<std::vector<mpq_class>> to_mpq(const std::vector<Vec>& m) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& r : m) {
    std::vector<mpq_class> row;
    for (const auto& x : r) row.push_back(x.rational());
    out.push_back(row);
  }
  return out;
}

/// Rank over F_p by plain modular Gaussian elimination.
inline std::size_t naive_rank_mod(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  std::size_t row = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  auto inv = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    const std::uint64_t iv = inv(a[row][c]);
    for (auto& x : a[row]) x = x * iv % p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = (a[r][k] + (p - f) * a[row][k]) % p;
    }
    ++row;
  }
  return row;
}

inline std::size_t naive_rank(const std::vector<Vec>& m) { return naive_rref(to_mpq(m)).size(); }

inline ProjPoint point_of(std::initializer_list<long> coords, const Field& f = Field::rationals()) {
  Vec v;
  for (long c : coords) v.push_back(f.from_int(c));
  return ProjPoint(v);
}

inline AutoMap diag_map(std::initializer_list<long> p, const Field& f = Field::rationals()) {
  Vec m;
  for (long x : p) m.push_back(f.from_int(x));
  return AutoMap::diagonal(m);
}

}  // namespace twl::testing
