#include "twistlab/linalg.hpp"

#include <sstream>

#include "twistlab/monomial.hpp"

namespace twl {

Ambient Ambient::poly(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("Ambient::poly needs d >= 1, n >= 0");
  return Ambient{Shape::kPoly, d, n, basis_size(d, n)};
}

Ambient Ambient::segre(int d, int m) {
  if (d < 1 || m < 0) throw std::invalid_argument("Ambient::segre needs d >= 1, m >= 0");
  const std::size_t n = basis_size(d, m);
  return Ambient{Shape::kSegre, d, m, n * n};
}

std::string Ambient::to_string() const {
  return std::string(shape == Shape::kPoly ? "U" : "Useg") + "(d=" + std::to_string(d) +
         ",deg=" + std::to_string(degree) + ",dim=" + std::to_string(dim) + ")";
}

namespace {

void require_same(const GradedSubspace& a, const GradedSubspace& b, const char* op) {
  if (!(a.ambient() == b.ambient())) {
    throw AmbientMismatch(std::string(op) + ": " + a.ambient().to_string() + " vs " +
                          b.ambient().to_string());
  }
  if (!(a.field() == b.field())) {
    throw FieldMismatch(std::string(op) + ": subspaces over different fields");
  }
}

void require_vec(const GradedSubspace& s, const Vec& v) {
  if (v.size() != s.ambient().dim) {
    throw AmbientMismatch("vector of length " + std::to_string(v.size()) + " in " +
                          s.ambient().to_string());
  }
}

}  // namespace

GradedSubspace::GradedSubspace(Ambient ambient, Field field)
    : ambient_(ambient), field_(field) {}

GradedSubspace GradedSubspace::span(const Ambient& ambient, const Field& field,
                                    const std::vector<Vec>& vectors) {
  GradedSubspace s(ambient, field);
  for (const auto& v : vectors) require_vec(s, v);
  if (vectors.empty()) return s;
  Echelon e = row_reduce(field, vectors, ambient.dim);
  s.rows_ = std::move(e.rows);
  s.pivots_ = std::move(e.pivots);
  return s;
}

GradedSubspace GradedSubspace::span(const Field& field, int d, int degree,
                                    const std::vector<HomogPoly>& polys) {
  std::vector<Vec> vecs;
  vecs.reserve(polys.size());
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (p.d() != d || p.degree() != degree) {
      throw AmbientMismatch("span: form of degree " + std::to_string(p.degree()) +
                            " in degree " + std::to_string(degree));
    }
    vecs.push_back(p.to_dense());
  }
  return span(Ambient::poly(d, degree), field, vecs);
}

GradedSubspace GradedSubspace::full(const Ambient& ambient, const Field& field) {
  GradedSubspace s(ambient, field);
  s.rows_.reserve(ambient.dim);
  for (std::size_t i = 0; i < ambient.dim; ++i) {
    Vec row(ambient.dim);
    row[i] = field.one();
    s.rows_.push_back(std::move(row));
    s.pivots_.push_back(i);
  }
  return s;
}

GradedSubspace GradedSubspace::from_rref(const Ambient& ambient, const Field& field,
                                         Echelon echelon) {
  if (echelon.rows.size() != echelon.pivots.size()) {
    throw std::invalid_argument("from_rref: row and pivot counts differ");
  }
  for (std::size_t k = 0; k < echelon.rows.size(); ++k) {
    const Vec& row = echelon.rows[k];
    const std::size_t p = echelon.pivots[k];
    if (row.size() != ambient.dim || p >= ambient.dim) {
      throw std::invalid_argument("from_rref: row outside the ambient");
    }
    if (k > 0 && echelon.pivots[k - 1] >= p) throw std::invalid_argument("from_rref: pivots unsorted");
    for (std::size_t j = 0; j < p; ++j) {
      if (!row[j].is_zero()) throw std::invalid_argument("from_rref: entry left of pivot");
    }
    if (!row[p].is_one()) throw std::invalid_argument("from_rref: pivot entry is not 1");
    for (std::size_t o = 0; o < echelon.pivots.size(); ++o) {
      if (o != k && !row[echelon.pivots[o]].is_zero()) {
        throw std::invalid_argument("from_rref: pivot column not cleared");
      }
    }
  }
  GradedSubspace s(ambient, field);
  s.rows_ = std::move(echelon.rows);
  s.pivots_ = std::move(echelon.pivots);
  return s;
}

std::vector<std::size_t> GradedSubspace::free_columns() const {
  std::vector<std::size_t> out;
  out.reserve(codim());
  std::size_t k = 0;
  for (std::size_t j = 0; j < ambient_.dim; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

std::vector<HomogPoly> GradedSubspace::basis_polys() const {
  if (ambient_.shape != Ambient::Shape::kPoly) {
    throw AmbientMismatch("basis_polys on a Segre ambient");
  }
  std::vector<HomogPoly> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(HomogPoly::from_dense(ambient_.d, ambient_.degree, r));
  return out;
}

Vec GradedSubspace::reduce(const Vec& v) const {
  require_vec(*this, v);
  Vec out = v;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = v[pivots_[k]];  // RREF: other rows vanish at this pivot
    if (c.is_zero()) continue;
    const Vec& row = rows_[k];
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (!row[j].is_zero()) out[j] -= c * row[j];
    }
  }
  return out;
}

Vec GradedSubspace::quotient_coords(const Vec& v) const {
  const Vec r = reduce(v);
  Vec out;
  out.reserve(codim());
  for (auto j : free_columns()) out.push_back(r[j]);
  return out;
}

bool GradedSubspace::contains(const Vec& v) const {
  const Vec r = reduce(v);
  for (const auto& x : r) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool GradedSubspace::contains(const GradedSubspace& other) const {
  require_same(*this, other, "contains");
  if (other.dim() > dim()) return false;
  for (const auto& r : other.rows_) {
    if (!contains(r)) return false;
  }
  return true;
}

bool operator==(const GradedSubspace& a, const GradedSubspace& b) {
  return a.ambient_ == b.ambient_ && a.field_ == b.field_ && a.pivots_ == b.pivots_ &&
         a.rows_ == b.rows_;
}

std::string GradedSubspace::to_csv() const {
  std::ostringstream os;
  for (const auto& r : rows_) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) os << ',';
      os << r[j].to_string();
    }
    os << '\n';
  }
  return os.str();
}

GradedSubspace sum(const GradedSubspace& v, const GradedSubspace& w) {
  require_same(v, w, "sum");
  std::vector<Vec> rows = v.basis();
  rows.insert(rows.end(), w.basis().begin(), w.basis().end());
  return GradedSubspace::span(v.ambient(), v.field(), rows);
}

GradedSubspace intersect(const GradedSubspace& v, const GradedSubspace& w) {
  require_same(v, w, "intersect");
  if (v.dim() == 0 || w.dim() == 0) return GradedSubspace(v.ambient(), v.field());
  if (v.codim() == 0) return w;
  if (w.codim() == 0) return v;
  // columns: basis of V then the negated basis of W
  const std::size_t a = v.dim();
  const std::size_t b = w.dim();
  std::vector<Vec> system(v.ambient().dim, Vec(a + b));
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t r = 0; r < system.size(); ++r) system[r][i] = v.basis()[i][r];
  }
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t r = 0; r < system.size(); ++r) {
      if (!w.basis()[i][r].is_zero()) system[r][a + i] = -w.basis()[i][r];
    }
  }
  std::vector<Vec> common;
  for (const auto& kv : nullspace(v.field(), system, a + b)) {
    Vec x(v.ambient().dim);
    for (std::size_t i = 0; i < a; ++i) {
      if (kv[i].is_zero()) continue;
      for (std::size_t r = 0; r < x.size(); ++r) {
        if (!v.basis()[i][r].is_zero()) x[r] += kv[i] * v.basis()[i][r];
      }
    }
    common.push_back(std::move(x));
  }
  return GradedSubspace::span(v.ambient(), v.field(), common);
}

bool member(const Vec& v, const GradedSubspace& space) { return space.contains(v); }

std::size_t quotient_dim(const GradedSubspace& v, const GradedSubspace& w) {
  if (!v.contains(w)) throw std::invalid_argument("quotient_dim: W is not a subspace of V");
  return v.dim() - w.dim();
}

GradedSubspace product_span(const GradedSubspace& v, const GradedSubspace& w) {
  if (v.ambient().shape != Ambient::Shape::kPoly || w.ambient().shape != Ambient::Shape::kPoly) {
    throw AmbientMismatch("product_span needs polynomial ambients");
  }
  if (v.ambient().d != w.ambient().d) throw AmbientMismatch("product_span: different d");
  if (!(v.field() == w.field())) throw FieldMismatch("product_span: different fields");
  const int d = v.ambient().d;
  const int a = v.ambient().degree;
  const int b = w.ambient().degree;
  std::vector<Vec> products;
  products.reserve(v.dim() * w.dim());
  for (const auto& x : v.basis()) {
    for (const auto& y : w.basis()) products.push_back(dense_mul(d, a, x, b, y));
  }
  return GradedSubspace::span(Ambient::poly(d, a + b), v.field(), products);
}

GradedSubspace colon_piece(const Field& field, std::span<const HomogPoly> gens,
                           const GradedSubspace& target, int n) {
  const Ambient& amb = target.ambient();
  if (amb.shape != Ambient::Shape::kPoly) throw AmbientMismatch("colon_piece: Segre target");
  const int d = amb.d;
  const Ambient source = Ambient::poly(d, n);
  if (gens.empty() || target.codim() == 0) return GradedSubspace::full(source, field);
  const int a = amb.degree - n;
  for (const auto& g : gens) {
    if (g.d() != d || (!g.is_zero() && g.degree() != a)) {
      throw AmbientMismatch("colon_piece: generator degree does not fit the target");
    }
  }

  // quotient coordinates of each ambient basis vector, sparse
  const auto free = target.free_columns();
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> image(amb.dim);
  {
    std::vector<std::size_t> free_pos(amb.dim, amb.dim);
    for (std::size_t q = 0; q < free.size(); ++q) {
      free_pos[free[q]] = q;
      image[free[q]].push_back({q, field.one()});
    }
    for (std::size_t k = 0; k < target.dim(); ++k) {
      const auto& row = target.basis()[k];
      auto& img = image[target.pivots()[k]];
      for (std::size_t q = 0; q < free.size(); ++q) {
        if (!row[free[q]].is_zero()) img.push_back({q, -row[free[q]]});
      }
    }
  }

  const std::size_t c = free.size();
  const auto source_basis = monomial_basis(d, n);
  std::vector<Vec> constraints(gens.size() * c, Vec(source.dim));
  std::vector<int> e(d + 1);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    for (const auto& t : gens[gi].terms()) {
      for (std::size_t j = 0; j < source.dim; ++j) {
        for (int v = 0; v <= d; ++v) e[v] = t.monomial[v] + source_basis[j][v];
        const std::size_t k = monomial_index(e.data(), d + 1, amb.degree);
        for (const auto& [q, val] : image[k]) constraints[gi * c + q][j] += t.coeff * val;
      }
    }
  }
  return GradedSubspace::span(source, field, nullspace(field, constraints, source.dim));
}

}  // namespace twl
