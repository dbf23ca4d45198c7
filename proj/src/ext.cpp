#include "twistlab/ext.hpp"

#include <bit>
#include <stdexcept>

#include "twistlab/elimination.hpp"
#include "twistlab/monomial.hpp"
#include "twistlab/orbit.hpp"

namespace twl {

// ---- GradedModule -----------------------------------------------------------

GradedModule::GradedModule(std::vector<ModuleSummand> summands) : summands_(std::move(summands)) {}

GradedModule GradedModule::free(int d, const Field& field, int shift) {
  return GradedModule({ModuleSummand{GradedIdeal::zero(d, field), shift}});
}

GradedModule GradedModule::quotient(GradedIdeal ideal, int shift) {
  return GradedModule({ModuleSummand{std::move(ideal), shift}});
}

GradedModule GradedModule::shifted(int s) const {
  GradedModule out = *this;
  for (auto& m : out.summands_) m.shift += s;
  return out;
}

GradedModule GradedModule::direct_sum(const GradedModule& other) const {
  GradedModule out = *this;
  out.summands_.insert(out.summands_.end(), other.summands_.begin(), other.summands_.end());
  return out;
}

namespace {

std::size_t summand_dim(const ModuleSummand& s, int n) {
  const int k = n + s.shift;
  if (k < 0) return 0;
  return s.ideal.piece(k).codim();
}

// Subsets of {0..d-1} with i elements as bitmasks, increasing numerically.
std::vector<unsigned> subsets(int d, int i) {
  std::vector<unsigned> out;
  if (i < 0 || i > d) return out;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (std::popcount(mask) == i) out.push_back(mask);
  }
  return out;
}

std::size_t block_index(const std::vector<unsigned>& blocks, unsigned mask) {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b] == mask) return b;
  }
  throw std::logic_error("koszul: missing subset");
}

}  // namespace

std::size_t GradedModule::dim(int n) const {
  std::size_t total = 0;
  for (const auto& s : summands_) total += summand_dim(s, n);
  return total;
}

// ---- KoszulComplex ----------------------------------------------------------

KoszulComplex::KoszulComplex(const Field& field, std::vector<HomogPoly> linear_forms)
    : field_(field), forms_(std::move(linear_forms)) {
  if (forms_.empty()) throw std::invalid_argument("KoszulComplex: no forms");
  const int nv = forms_.front().d();
  std::vector<Vec> rows;
  for (const auto& f : forms_) {
    if (f.d() != nv || f.degree() != 1) {
      throw std::invalid_argument("KoszulComplex: forms must be linear in one ring");
    }
    rows.push_back(f.to_dense());
  }
  if (static_cast<int>(forms_.size()) != nv) {
    throw std::invalid_argument("KoszulComplex: need exactly d forms in d+1 variables");
  }
  if (matrix_rank(field_, rows, nv + 1) != forms_.size()) {
    throw std::invalid_argument("KoszulComplex: linear forms are dependent");
  }
}

KoszulComplex KoszulComplex::for_point(const ProjPoint& c, const Field& field) {
  return KoszulComplex(field, GradedIdeal::point(c, field).piece(1).basis_polys());
}

std::size_t KoszulComplex::cochain_dim(int i, const GradedModule& m, int n) const {
  if (i < 0 || i > d()) return 0;
  return static_cast<std::size_t>(binomial(d(), i)) * m.dim(n + i);
}

namespace {

// delta^i for one summand: rows indexed (block S, basis q), columns (block S', basis q').
std::vector<Vec> summand_differential(const KoszulComplex& k, int i, const ModuleSummand& s,
                                      int n, std::size_t& ncols) {
  const int d = k.d();
  const auto src_blocks = subsets(d, i);
  const auto dst_blocks = subsets(d, i + 1);
  const std::size_t src_dim = summand_dim(s, n + i);
  const std::size_t dst_dim = summand_dim(s, n + i + 1);
  ncols = dst_blocks.size() * dst_dim;
  std::vector<Vec> rows;
  if (src_dim == 0) return rows;
  rows.assign(src_blocks.size() * src_dim, Vec(ncols, k.field().zero()));
  if (dst_dim == 0) return rows;

  const int deg = n + i + s.shift;
  const GradedSubspace& src_piece = s.ideal.piece(deg);
  const GradedSubspace& dst_piece = s.ideal.piece(deg + 1);
  const auto src_free = src_piece.free_columns();
  const std::size_t amb = src_piece.ambient().dim;
  // l_j times each quotient basis vector, in quotient coordinates
  std::vector<std::vector<Vec>> images(d);
  for (int j = 0; j < d; ++j) {
    const Vec lj = k.forms()[j].to_dense();
    for (std::size_t q = 0; q < src_dim; ++q) {
      Vec e(amb, k.field().zero());
      e[src_free[q]] = k.field().one();
      images[j].push_back(dst_piece.quotient_coords(dense_mul(d, 1, lj, deg, e)));
    }
  }
  for (std::size_t b = 0; b < src_blocks.size(); ++b) {
    const unsigned mask = src_blocks[b];
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) continue;
      const int below = std::popcount(mask & ((1u << j) - 1));
      const bool negate = (below % 2) != 0;
      const std::size_t target = block_index(dst_blocks, mask | (1u << j)) * dst_dim;
      for (std::size_t q = 0; q < src_dim; ++q) {
        Vec& row = rows[b * src_dim + q];
        const Vec& img = images[j][q];
        for (std::size_t t = 0; t < dst_dim; ++t) {
          if (img[t].is_zero()) continue;
          row[target + t] += negate ? -img[t] : img[t];
        }
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<Vec> KoszulComplex::differential(int i, const GradedModule& m, int n) const {
  std::vector<Vec> out;
  const std::size_t total_cols = cochain_dim(i + 1, m, n);
  std::size_t offset = 0;
  for (const auto& s : m.summands()) {
    std::size_t ncols = 0;
    auto rows = summand_differential(*this, i, s, n, ncols);
    for (auto& r : rows) {
      Vec full(total_cols, field_.zero());
      for (std::size_t c = 0; c < r.size(); ++c) full[offset + c] = r[c];
      out.push_back(std::move(full));
    }
    offset += ncols;
  }
  return out;
}

std::size_t KoszulComplex::differential_rank(int i, const GradedModule& m, int n) const {
  if (i < 0 || i >= d()) return 0;
  std::size_t rank = 0;
  for (const auto& s : m.summands()) {
    std::size_t ncols = 0;
    const auto rows = summand_differential(*this, i, s, n, ncols);
    if (!rows.empty() && ncols > 0) rank += matrix_rank(field_, rows, ncols);
  }
  return rank;
}

std::size_t ext_U(const KoszulComplex& k, int i, const GradedModule& m, int n) {
  if (i < 0 || i > k.d()) throw std::out_of_range("ext_U: index outside 0..d");
  return k.cochain_dim(i, m, n) - k.differential_rank(i, m, n) -
         k.differential_rank(i - 1, m, n);
}

std::size_t ext_S_twisted(const IdealizerRing& t, int i, const GradedIdeal& j, int n) {
  const KoszulComplex k(t.field(), t.I_piece(1).basis_polys());
  const GradedIdeal pulled = j.transformed(t.ring().phi_power(-n));
  return ext_U(k, i, GradedModule::quotient(pulled), n);
}

std::size_t hom_S_quotient(const IdealizerRing& t, const GradedIdeal& j, int n) {
  if (n < 0) return 0;
  std::vector<HomogPoly> gens;
  for (const auto& g : t.I_piece(1).basis_polys()) gens.push_back(t.ring().phi_power(n).apply(g));
  const GradedSubspace colon = colon_piece(t.field(), gens, j.piece(n + 1), n);
  return quotient_dim(colon, j.piece(n));
}

ProbeRecord right_noeth_probe(const IdealizerRing& t, const HomogPoly& f, int max_degree) {
  if (f.is_zero()) throw std::invalid_argument("right_noeth_probe: f is zero");
  const int n = f.degree();
  if (!t.T_piece(n).contains(f.to_dense())) {
    throw std::invalid_argument("right_noeth_probe: " + f.to_string() + " is not in T");
  }
  const TwistRing& s = t.ring();
  const OrbitWindow orbit = orbit_points(s.phi(), t.point(), std::max(max_degree, n));
  ProbeRecord rec;
  rec.f = f.to_string();
  rec.degree = n;
  rec.max_degree = max_degree;
  for (int m = n; m <= max_degree; ++m) {
    const HomogPoly g = s.phi_power(m - n).apply(f);
    const GradedSubspace line = GradedSubspace::span(t.field(), t.d(), n, {g});
    const GradedSubspace fs = product_span(line, s.full_piece(m - n));
    const GradedSubspace& tm = t.T_piece(m);
    const GradedSubspace ft = product_span(line, t.T_piece(m - n));
    ProbeDegree pd;
    pd.m = m;
    pd.coker_dim = sum(fs, tm).codim();
    pd.tor_dim = quotient_dim(intersect(fs, tm), ft);
    pd.vanishes_at_orbit = evaluate(f, orbit.at(n - m)).is_zero();
    if (pd.vanishes_at_orbit != evaluate(g, t.point()).is_zero()) {
      throw std::logic_error("right_noeth_probe: orbit convention mismatch");
    }
    if (pd.coker_dim > 0) rec.support.push_back(m);
    if (pd.vanishes_at_orbit) rec.predicted_support.push_back(m);
    rec.coker_total += pd.coker_dim;
    rec.tor_total += pd.tor_dim;
    rec.degrees.push_back(pd);
  }
  rec.consistent = rec.support == rec.predicted_support;
  return rec;
}

ChiTable ext_table(const IdealizerRing& t, const GradedIdeal& j, int max_degree, int trailing) {
  ChiTable table;
  table.ideal = j.describe();
  table.max_degree = max_degree;
  table.trailing = trailing;
  const KoszulComplex k(t.field(), t.I_piece(1).basis_polys());
  for (int i = 0; i <= t.d(); ++i) table.rows.push_back(ChiRow{i, {}, 0, false});
  for (int n = -max_degree; n <= max_degree; ++n) {
    const GradedModule m = GradedModule::quotient(j.transformed(t.ring().phi_power(-n)));
    for (int i = 0; i <= t.d(); ++i) {
      const std::size_t v = ext_U(k, i, m, n);
      table.rows[i].values.push_back(v);
      table.rows[i].total += v;
    }
  }
  for (auto& row : table.rows) {
    int zeros = 0;
    for (auto it = row.values.rbegin(); it != row.values.rend() && *it == 0; ++it) ++zeros;
    row.stabilized = zeros >= trailing;
  }
  return table;
}

std::vector<ChiTable> chi_sample_report(const IdealizerRing& t,
                                        const std::vector<GradedIdeal>& family, int max_degree,
                                        int trailing) {
  std::vector<ChiTable> out;
  out.reserve(family.size());
  for (const auto& j : family) out.push_back(ext_table(t, j, max_degree, trailing));
  return out;
}

}  // namespace twl
