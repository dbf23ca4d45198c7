#include "twistlab/automap.hpp"

#include <stdexcept>

namespace twl {

Vec canonical_coords(Vec coords) {
  std::size_t lead = 0;
  while (lead < coords.size() && coords[lead].is_zero()) ++lead;
  if (lead == coords.size()) {
    throw std::invalid_argument("projective point with all coordinates zero");
  }
  if (!coords[lead].is_rational()) {
    const Scalar inv = coords[lead].inverse();
    for (auto& c : coords) c *= inv;
    return coords;
  }
  // Q: clear denominators, strip content, make the leading entry positive
  mpz_class lcm = 1;
  for (const auto& c : coords) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(coords.size());
  mpz_class g = 0;
  for (const auto& c : coords) {
    mpz_class v = c.rational().get_num() * (lcm / c.rational().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (sgn(ints[lead]) < 0) g = -g;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    coords[i] = Scalar(mpq_class(ints[i] / g));
  }
  return coords;
}

ProjPoint::ProjPoint(Vec coords) : coords_(canonical_coords(std::move(coords))) {}

bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }

std::string ProjPoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ":";
    out += coords_[i].to_string();
  }
  return out + ")";
}

Matrix matrix_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t inner = b.size();
  const std::size_t m = inner == 0 ? 0 : b[0].size();
  Matrix out(n, Vec(m));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("matrix_mul: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

Matrix matrix_inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix work = a;
  Matrix inv(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (work[i].size() != n) throw std::invalid_argument("matrix must be square");
    inv[i][i] = work[i][i].is_rational() ? Scalar(1) : Scalar::residue(1, work[i][i].modulus());
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::invalid_argument("automorphism matrix is singular");
    std::swap(work[piv], work[col]);
    std::swap(inv[piv], inv[col]);
    const Scalar scale = work[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r][col].is_zero()) continue;
      const Scalar f = work[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[r][j] -= f * work[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

bool matrix_is_diagonal(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && !m[i][j].is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

AutoMap::AutoMap(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.size() < 2) throw std::invalid_argument("automorphism needs at least 2 variables");
  inverse_ = matrix_inverse(matrix_);
  diagonal_ = matrix_is_diagonal(matrix_);
}

AutoMap::AutoMap(Matrix matrix, Matrix inverse)
    : matrix_(std::move(matrix)), inverse_(std::move(inverse)) {
  diagonal_ = matrix_is_diagonal(matrix_);
}

AutoMap AutoMap::identity(int d, const Field& field) {
  Matrix m(d + 1, Vec(d + 1, field.zero()));
  for (int i = 0; i <= d; ++i) m[i][i] = field.one();
  return AutoMap(m, m);
}

AutoMap AutoMap::diagonal(std::span<const Scalar> multipliers) {
  const std::size_t n = multipliers.size() + 1;
  Scalar one(1), zero(0);
  for (const auto& p : multipliers) {
    if (p.is_zero()) throw std::invalid_argument("diagonal automorphism with zero multiplier");
    if (!p.is_rational()) {
      one = Scalar::residue(1, p.modulus());
      zero = Scalar::residue(0, p.modulus());
    }
  }
  Matrix m(n, Vec(n, zero));
  Matrix inv(n, Vec(n, zero));
  m[0][0] = one;
  inv[0][0] = one;
  for (std::size_t i = 1; i < n; ++i) {
    m[i][i] = one * multipliers[i - 1];
    inv[i][i] = m[i][i].inverse();
  }
  return AutoMap(std::move(m), std::move(inv));
}

bool AutoMap::is_identity() const {
  if (!diagonal_) return false;
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    if (!matrix_[i][i].is_one()) return false;
  }
  return true;
}

AutoMap AutoMap::inverse() const { return AutoMap(inverse_, matrix_); }

AutoMap AutoMap::compose(const AutoMap& other) const {
  return AutoMap(matrix_mul(matrix_, other.matrix_), matrix_mul(other.inverse_, inverse_));
}

AutoMap AutoMap::power(long k) const {
  AutoMap base = k < 0 ? inverse() : *this;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  Field field = matrix_[0][0].is_rational() ? Field::rationals() : Field::prime(matrix_[0][0].modulus());
  AutoMap result = identity(d(), field);
  while (e != 0) {
    if (e & 1U) result = result.compose(base);
    e >>= 1U;
    if (e != 0) base = base.compose(base);
  }
  return result;
}

HomogPoly AutoMap::apply(const HomogPoly& f) const {
  if (f.d() != d()) throw std::invalid_argument("apply_auto: dimension mismatch");
  const int n = d() + 1;
  if (diagonal_) {
    std::vector<HomogPoly::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
      Scalar c = t.coeff;
      for (int i = 0; i < n; ++i) {
        if (t.monomial[i] != 0) c *= matrix_[i][i].pow(t.monomial[i]);
      }
      terms.push_back({t.monomial, std::move(c)});
    }
    return HomogPoly::from_terms(d(), f.degree(), std::move(terms));
  }
  // images of the variables: x_i -> sum_j A[j][i] x_j
  std::vector<HomogPoly> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<HomogPoly::Term> terms;
    for (int j = 0; j < n; ++j) {
      if (!matrix_[j][i].is_zero()) terms.push_back({Monomial::variable(n, j), matrix_[j][i]});
    }
    images.push_back(HomogPoly::from_terms(d(), 1, std::move(terms)));
  }
  // powers[i][e] = images[i]^e
  std::vector<std::vector<HomogPoly>> powers(n);
  for (int i = 0; i < n; ++i) {
    powers[i].push_back(HomogPoly::constant(d(), Scalar(1)));
    for (int e = 1; e <= f.degree(); ++e) powers[i].push_back(poly_mul(powers[i].back(), images[i]));
  }
  HomogPoly out(d(), f.degree());
  for (const auto& t : f.terms()) {
    HomogPoly term = HomogPoly::constant(d(), t.coeff);
    for (int i = 0; i < n; ++i) {
      if (t.monomial[i] != 0) term = poly_mul(term, powers[i][t.monomial[i]]);
    }
    out += term;
  }
  return out;
}

Vec AutoMap::apply_dense(int degree, const Vec& coords) const {
  if (diagonal_) {
    const auto basis = monomial_basis(d(), degree);
    Vec out = coords;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k].is_zero()) continue;
      for (int i = 0; i <= d(); ++i) {
        if (basis[k][i] != 0) out[k] *= matrix_[i][i].pow(basis[k][i]);
      }
    }
    return out;
  }
  return apply(HomogPoly::from_dense(d(), degree, coords)).to_dense();
}

Scalar evaluate(const HomogPoly& f, const ProjPoint& p) { return evaluate_at(f, p.coords()); }

namespace {

Vec transpose_times(const Matrix& m, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!m[j][i].is_zero() && !v[j].is_zero()) out[i] += m[j][i] * v[j];
    }
  }
  return out;
}

}  // namespace

ProjPoint point_image(const AutoMap& a, const ProjPoint& p) {
  if (p.d() != a.d()) throw std::invalid_argument("point_image: dimension mismatch");
  return ProjPoint(transpose_times(a.matrix(), p.coords()));
}

ProjPoint pullback_point(const AutoMap& a, const ProjPoint& p) {
  if (p.d() != a.d()) throw std::invalid_argument("pullback_point: dimension mismatch");
  return ProjPoint(transpose_times(a.inverse_matrix(), p.coords()));
}

}  // namespace twl
