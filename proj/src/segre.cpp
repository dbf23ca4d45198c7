#include "twistlab/segre.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "twistlab/elimination.hpp"
#include "twistlab/monomial.hpp"

namespace twl {

namespace {

// product_index[i][j] = index of basis_a[i] * basis_b[j] in degree a+b.
std::vector<std::vector<std::size_t>> product_table(int d, int a, int b) {
  const auto ba = monomial_basis(d, a);
  const auto bb = monomial_basis(d, b);
  std::vector<std::vector<std::size_t>> out(ba.size(), std::vector<std::size_t>(bb.size()));
  for (std::size_t i = 0; i < ba.size(); ++i) {
    for (std::size_t j = 0; j < bb.size(); ++j) out[i][j] = monomial_index(ba[i] * bb[j]);
  }
  return out;
}

}  // namespace

SegreLab::SegreLab(const IdealizerRing& t) : t_(t) {}

GradedSubspace SegreLab::diagonal_ideal_piece(int m) const {
  const Ambient amb = ambient(m);
  const std::size_t n = basis_size(d(), m);
  const auto table = product_table(d(), m, m);
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) classes[table[i][j]].push_back(i * n + j);
  }
  // within a class p_0 < ... < p_k the rows e_{p_t} - e_{p_k} are the RREF
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (pivot, free)
  for (const auto& [c, idx] : classes) {
    for (std::size_t t = 0; t + 1 < idx.size(); ++t) pairs.push_back({idx[t], idx.back()});
  }
  std::sort(pairs.begin(), pairs.end());
  Echelon e;
  for (const auto& [p, f] : pairs) {
    Vec row(amb.dim, field().zero());
    row[p] = field().one();
    row[f] = -field().one();
    e.rows.push_back(std::move(row));
    e.pivots.push_back(p);
  }
  return GradedSubspace::from_rref(amb, field(), std::move(e));
}

GradedSubspace SegreLab::tensor_piece(const GradedSubspace& a, const GradedSubspace& b) const {
  if (!(a.ambient() == b.ambient()) || a.ambient().shape != Ambient::Shape::kPoly) {
    throw AmbientMismatch("tensor_piece: factors must share one polynomial ambient");
  }
  const std::size_t n = a.ambient().dim;
  const Ambient amb = ambient(a.ambient().degree);
  Echelon e;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t s = 0; s < b.dim(); ++s) {
      Vec row(amb.dim, field().zero());
      const Vec& x = a.basis()[r];
      const Vec& y = b.basis()[s];
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!y[j].is_zero()) row[i * n + j] = x[i] * y[j];
        }
      }
      e.rows.push_back(std::move(row));
      e.pivots.push_back(a.pivots()[r] * n + b.pivots()[s]);
    }
  }
  return GradedSubspace::from_rref(amb, field(), std::move(e));
}

GradedSubspace SegreLab::K_piece(int m) const {
  if (m == 0) return GradedSubspace(ambient(0), field());
  return tensor_piece(t_.I_piece(m), t_.I_piece(m));
}

Vec SegreLab::multiply(int m, const Vec& x) const {
  const std::size_t n = basis_size(d(), m);
  if (x.size() != n * n) throw AmbientMismatch("multiply: vector is not in U_m (x) U_m");
  const auto table = product_table(d(), m, m);
  Vec out(basis_size(d(), 2 * m), field().zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!x[i * n + j].is_zero()) out[table[i][j]] += x[i * n + j];
    }
  }
  return out;
}

Vec SegreLab::segre_mul(int a, const Vec& x, int b, const Vec& y) const {
  const std::size_t na = basis_size(d(), a);
  const std::size_t nb = basis_size(d(), b);
  const std::size_t nc = basis_size(d(), a + b);
  if (x.size() != na * na || y.size() != nb * nb) throw AmbientMismatch("segre_mul: bad sizes");
  const auto table = product_table(d(), a, b);
  Vec out(nc * nc, field().zero());
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p].is_zero()) continue;
    const std::size_t i1 = p / na;
    const std::size_t j1 = p % na;
    for (std::size_t q = 0; q < y.size(); ++q) {
      if (y[q].is_zero()) continue;
      const std::size_t i2 = q / nb;
      const std::size_t j2 = q % nb;
      out[table[i1][i2] * nc + table[j1][j2]] += x[p] * y[q];
    }
  }
  return out;
}

Vec SegreLab::apply_phi(int m, const Vec& x) const {
  const std::size_t n = basis_size(d(), m);
  const AutoMap& phi = t_.ring().phi();
  // images of each basis monomial
  std::vector<Vec> img(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, field().zero());
    e[i] = field().one();
    img[i] = phi.apply_dense(m, e);
  }
  Vec out(n * n, field().zero());
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p].is_zero()) continue;
    const Vec& a = img[p / n];
    const Vec& b = img[p % n];
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].is_zero()) continue;
      const Scalar xa = x[p] * a[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[j].is_zero()) out[i * n + j] += xa * b[j];
      }
    }
  }
  return out;
}

bool SegreLab::in_K(int m, const Vec& x) const {
  const std::size_t n = basis_size(d(), m);
  const auto basis = monomial_basis(d(), m);
  Vec ev(n);
  for (std::size_t i = 0; i < n; ++i) {
    ev[i] = evaluate(HomogPoly::from_monomial(basis[i], field().one()), t_.point());
  }
  for (std::size_t k = 0; k < n; ++k) {
    Scalar left = field().zero();
    Scalar right = field().zero();
    for (std::size_t i = 0; i < n; ++i) {
      left += ev[i] * x[i * n + k];
      right += ev[i] * x[k * n + i];
    }
    if (!left.is_zero() || !right.is_zero()) return false;
  }
  return true;
}

bool SegreLab::diagonal_invariant(int m) const {
  const GradedSubspace j = diagonal_ideal_piece(m);
  for (const auto& v : j.basis()) {
    for (const auto& c : multiply(m, apply_phi(m, v))) {
      if (!c.is_zero()) return false;
    }
  }
  return true;
}

WitnessDegree SegreLab::witness(int m) const {
  WitnessDegree w;
  w.m = m;
  const GradedSubspace j = diagonal_ideal_piece(m);
  const GradedSubspace k = K_piece(m);
  w.j_dim = j.dim();
  w.k_dim = k.dim();
  w.jk_inside_cap = true;
  if (k.dim() == 0) return w;

  // J cap K = kernel of multiplication restricted to K, in K-coordinates.
  const std::size_t out_dim = basis_size(d(), 2 * m);
  std::vector<Vec> system(out_dim, Vec(k.dim(), field().zero()));
  for (std::size_t r = 0; r < k.dim(); ++r) {
    const Vec img = multiply(m, k.basis()[r]);
    for (std::size_t q = 0; q < out_dim; ++q) system[q][r] = img[q];
  }
  w.cap_dim = k.dim() - matrix_rank(field(), system, k.dim());

  // (J o K)_m = J_{m-1} o K_1, expressed in K-coordinates (pivot entries).
  if (m >= 2) {
    const GradedSubspace jm1 = diagonal_ideal_piece(m - 1);
    const GradedSubspace k1 = K_piece(1);
    std::vector<Vec> coords;
    coords.reserve(jm1.dim() * k1.dim());
    for (const auto& x : jm1.basis()) {
      for (const auto& y : k1.basis()) {
        const Vec v = segre_mul(m - 1, x, 1, y);
        for (const auto& c : multiply(m, v)) {
          if (!c.is_zero()) w.jk_inside_cap = false;
        }
        if (!in_K(m, v)) w.jk_inside_cap = false;
        Vec c(k.dim());
        for (std::size_t r = 0; r < k.dim(); ++r) c[r] = v[k.pivots()[r]];
        coords.push_back(std::move(c));
      }
    }
    w.jk_dim = matrix_rank(field(), coords, k.dim());
  }
  w.witness_dim = w.cap_dim - w.jk_dim;
  return w;
}

WitnessReport SegreLab::witness_dims(int max_degree) const {
  WitnessReport rep;
  rep.max_degree = max_degree;
  for (int m = 0; m <= max_degree; ++m) rep.degrees.push_back(witness(m));
  for (int m = max_degree; m >= 1 && rep.degrees[m].witness_dim > 0; --m) rep.nonvanishing_from = m;
  return rep;
}

LocalWitness local_witness_check(int d) {
  if (d < 2) throw std::invalid_argument("local_witness_check: d must be at least 2");
  const int top = 2 * d - 1;  // variables u_1..u_d are 0..d-1, v_1..v_d are d..2d-1
  const Field q = Field::rationals();
  const auto u = [&](int i) { return HomogPoly::variable(top, i - 1); };
  const auto v = [&](int i) { return HomogPoly::variable(top, d + i - 1); };

  LocalWitness out;
  out.d = d;
  const HomogPoly w = poly_mul(u(1), v(2)) - poly_mul(u(2), v(1));
  out.w = w.to_string();

  std::vector<HomogPoly> jgens;
  for (int i = 1; i <= d; ++i) jgens.push_back(u(i) - v(i));
  std::vector<HomogPoly> kgens;
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) kgens.push_back(poly_mul(u(i), v(j)));
  }

  const HomogPoly combo = poly_mul(u(1), v(2) - u(2)) + poly_mul(u(2), u(1) - v(1));
  out.w_in_J_explicit = combo == w;

  // J'_2 = span of generators times variables
  const auto j_degree_two = [&]() {
    std::vector<HomogPoly> prods;
    for (const auto& g : jgens) {
      for (int x = 0; x <= top; ++x) prods.push_back(poly_mul(g, HomogPoly::variable(top, x)));
    }
    return GradedSubspace::span(q, top, 2, prods);
  }();
  out.w_in_J_linear = j_degree_two.contains(w.to_dense());
  out.control_rejected = !j_degree_two.contains(poly_mul(u(1), v(1)).to_dense());

  out.w_in_K = !w.is_zero();
  for (const auto& t : w.terms()) {
    bool has_u = false;
    bool has_v = false;
    for (int x = 0; x < d; ++x) has_u = has_u || t.monomial[x] > 0;
    for (int x = d; x <= top; ++x) has_v = has_v || t.monomial[x] > 0;
    out.w_in_K = out.w_in_K && has_u && has_v && t.monomial.degree() == 2;
  }

  out.products_degree_three = true;
  for (const auto& a : jgens) {
    for (const auto& b : kgens) {
      const HomogPoly p = poly_mul(a, b);
      if (p.is_zero() || p.degree() < 3) out.products_degree_three = false;
    }
  }
  out.w_nonzero_degree_two = !w.is_zero() && w.degree() == 2;
  out.passed = out.w_in_J_explicit && out.w_in_J_linear && out.w_in_K &&
               out.products_degree_three && out.w_nonzero_degree_two && out.control_rejected;
  return out;
}

}  // namespace twl
