#include "twistlab/twist_ring.hpp"

#include <stdexcept>

namespace twl {

Field field_of(const AutoMap& phi) {
  for (const auto& row : phi.matrix()) {
    for (const auto& x : row) {
      if (!x.is_rational()) return Field::prime(x.modulus());
    }
  }
  return Field::rationals();
}

// ---- GradedIdeal ------------------------------------------------------------

GradedIdeal::GradedIdeal(int d, Field field, std::vector<HomogPoly> generators)
    : d_(d), field_(field) {
  if (d < 1) throw std::invalid_argument("GradedIdeal: d must be at least 1");
  for (auto& g : generators) {
    if (g.d() != d) throw std::invalid_argument("GradedIdeal: generator over the wrong ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

GradedIdeal GradedIdeal::zero(int d, const Field& field) { return GradedIdeal(d, field, {}); }

GradedIdeal GradedIdeal::irrelevant(int d, const Field& field) {
  std::vector<HomogPoly> gens;
  for (int i = 0; i <= d; ++i) gens.push_back(HomogPoly::variable(d, i) * field.one());
  return GradedIdeal(d, field, std::move(gens));
}

GradedIdeal GradedIdeal::point(const ProjPoint& p, const Field& field) {
  const int d = p.d();
  // degree-1 generators: kernel of evaluation on U_1
  Vec eval(d + 1);
  for (int i = 0; i <= d; ++i) eval[i] = field.from(p[i]);
  std::vector<HomogPoly> gens;
  for (const auto& v : nullspace(field, {eval}, d + 1)) gens.push_back(HomogPoly::from_dense(d, 1, v));
  GradedIdeal ideal(d, field, std::move(gens));
  ideal.point_ = p;
  return ideal;
}

const GradedSubspace& GradedIdeal::piece(int n) const {
  if (n < 0) throw std::invalid_argument("GradedIdeal::piece: negative degree");
  std::lock_guard lock(memo_->mutex);
  auto& pieces = memo_->pieces;
  if (auto it = pieces.find(n); it != pieces.end()) return it->second;
  if (point_) {
    return pieces.emplace(n, compute_piece(n)).first->second;
  }
  // generator recursion: fill every missing degree up to n
  int start = 0;
  while (pieces.count(start) != 0) ++start;
  for (int k = start; k <= n; ++k) pieces.emplace(k, compute_piece(k));
  return pieces.at(n);
}

GradedSubspace GradedIdeal::compute_piece(int n) const {
  const Ambient amb = Ambient::poly(d_, n);
  if (point_) {
    const auto basis = monomial_basis(d_, n);
    Vec eval(amb.dim);
    for (std::size_t j = 0; j < amb.dim; ++j) {
      eval[j] = field_.from(evaluate(HomogPoly::from_monomial(basis[j]), *point_));
    }
    return GradedSubspace::span(amb, field_, nullspace(field_, {eval}, amb.dim));
  }
  // caller holds the lock and has filled degree n-1
  std::vector<Vec> rows;
  if (n > 0) {
    const GradedSubspace& below = memo_->pieces.at(n - 1);
    for (const auto& v : below.basis()) {
      for (int i = 0; i <= d_; ++i) {
        rows.push_back(dense_mul(d_, 1, HomogPoly::variable(d_, i).to_dense(), n - 1, v));
      }
    }
  }
  for (const auto& g : gens_) {
    if (g.degree() == n) rows.push_back(g.to_dense());
  }
  return GradedSubspace::span(amb, field_, rows);
}

GradedIdeal GradedIdeal::transformed(const AutoMap& phi) const {
  if (point_) return point(pullback_point(phi, *point_), field_);
  std::vector<HomogPoly> gens;
  gens.reserve(gens_.size());
  for (const auto& g : gens_) gens.push_back(phi.apply(g));
  return GradedIdeal(d_, field_, std::move(gens));
}

std::string GradedIdeal::describe() const {
  if (point_) return "point" + point_->to_string();
  if (gens_.empty()) return "0";
  std::string out = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ", ";
    out += gens_[i].to_string();
  }
  return out + ")";
}

// ---- TwistRing --------------------------------------------------------------

TwistRing::TwistRing(AutoMap phi, int max_degree)
    : phi_(std::move(phi)), field_(field_of(phi_)), max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("TwistRing: negative truncation degree");
  cache_radius_ = 2L * max_degree_ + 4;
  powers_.reserve(2 * cache_radius_ + 1);
  const AutoMap inv = phi_.inverse();
  std::vector<AutoMap> neg{AutoMap::identity(phi_.d(), field_)};
  std::vector<AutoMap> pos{AutoMap::identity(phi_.d(), field_)};
  for (long k = 1; k <= cache_radius_; ++k) {
    neg.push_back(neg.back().compose(inv));
    pos.push_back(pos.back().compose(phi_));
  }
  for (long k = cache_radius_; k > 0; --k) powers_.push_back(neg[k]);
  for (long k = 0; k <= cache_radius_; ++k) powers_.push_back(pos[k]);
}

const AutoMap& TwistRing::phi_power(long k) const {
  if (k >= -cache_radius_ && k <= cache_radius_) return powers_[k + cache_radius_];
  std::lock_guard lock(memo_->mutex);
  auto it = memo_->powers.find(k);
  if (it == memo_->powers.end()) it = memo_->powers.emplace(k, phi_.power(k)).first;
  return it->second;
}

TwistedElement TwistRing::mul(const TwistedElement& f, const TwistedElement& g) const {
  if (f.value.d() != d() || g.value.d() != d()) {
    throw std::invalid_argument("twist_mul: element from a different ring");
  }
  return {poly_mul(phi_power(g.degree()).apply(f.value), g.value)};
}

GradedSubspace TwistRing::transform(const GradedSubspace& v, long k) const {
  if (k == 0 || v.dim() == 0) return v;
  const AutoMap& a = phi_power(k);
  std::vector<Vec> rows;
  rows.reserve(v.dim());
  for (const auto& r : v.basis()) rows.push_back(a.apply_dense(v.ambient().degree, r));
  return GradedSubspace::span(v.ambient(), v.field(), rows);
}

GradedSubspace TwistRing::product(const GradedSubspace& v, const GradedSubspace& w) const {
  return product_span(transform(v, w.ambient().degree), w);
}

std::map<int, GradedSubspace> TwistRing::left_ideal_pieces(std::span<const TwistedElement> gens,
                                                           int max_degree) const {
  std::map<int, GradedSubspace> pieces;
  const GradedSubspace s1 = full_piece(1);
  for (int n = 0; n <= max_degree; ++n) {
    std::vector<Vec> rows;
    if (n > 0) rows = product(s1, pieces.at(n - 1)).basis();
    for (const auto& g : gens) {
      if (g.degree() == n && !g.value.is_zero()) rows.push_back(g.value.to_dense());
    }
    pieces.emplace(n, GradedSubspace::span(Ambient::poly(d(), n), field_, rows));
  }
  return pieces;
}

std::map<int, GradedSubspace> TwistRing::right_ideal_pieces(const TwistedElement& f,
                                                            int max_degree) const {
  std::map<int, GradedSubspace> pieces;
  const int n = f.degree();
  for (int m = 0; m <= max_degree; ++m) {
    const Ambient amb = Ambient::poly(d(), m);
    if (m < n || f.value.is_zero()) {
      pieces.emplace(m, GradedSubspace(amb, field_));
      continue;
    }
    const Vec g = phi_power(m - n).apply(f.value).to_dense();
    const GradedSubspace line = GradedSubspace::span(Ambient::poly(d(), n), field_, {g});
    pieces.emplace(m, product_span(line, full_piece(m - n)));
  }
  return pieces;
}

OppositeCheck TwistRing::opposite_iso_check(int max_degree) const {
  OppositeCheck out;
  out.max_degree = max_degree;
  // u *' v = phi^{-deg v}(u) o v
  const auto twisted_inverse_mul = [&](const HomogPoly& u, const HomogPoly& v) {
    return poly_mul(phi_power(-v.degree()).apply(u), v);
  };
  for (int total = 0; total <= max_degree; ++total) {
    for (int a = 0; a <= total; ++a) {
      const int b = total - a;
      const auto fa = monomial_basis(d(), a);
      const auto gb = monomial_basis(d(), b);
      for (const auto& fm : fa) {
        const HomogPoly f = HomogPoly::from_monomial(fm, field_.one());
        const HomogPoly psi_f = phi_power(-a).apply(f);
        for (const auto& gm : gb) {
          const HomogPoly g = HomogPoly::from_monomial(gm, field_.one());
          // g *_op f = f * g in S
          const HomogPoly lhs = phi_power(-(a + b)).apply(mul({f}, {g}).value);
          const HomogPoly rhs = twisted_inverse_mul(phi_power(-b).apply(g), psi_f);
          ++out.pairs_checked;
          if (!(lhs == rhs) && out.passed) {
            out.passed = false;
            out.first_failure = std::make_pair(fm, gm);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace twl
