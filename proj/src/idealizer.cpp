#include "twistlab/idealizer.hpp"

#include <stdexcept>

#include "twistlab/orbit.hpp"

namespace twl {

std::size_t WindowSeries::trailing_zero_count() const {
  std::size_t k = 0;
  for (auto it = values.rbegin(); it != values.rend() && *it == 0; ++it) ++k;
  return k;
}

WindowSeries make_window_series(std::vector<std::size_t> values, int trailing) {
  WindowSeries s;
  s.window = static_cast<int>(values.size()) - 1;
  s.trailing = trailing;
  s.values = std::move(values);
  const std::size_t zeros = s.trailing_zero_count();
  if (zeros >= static_cast<std::size_t>(std::max(trailing, 1))) {
    s.stable_from = static_cast<int>(s.values.size() - zeros);
  }
  return s;
}

namespace {

ProjPoint into_field(const ProjPoint& c, const Field& field) {
  Vec coords;
  for (const auto& x : c.coords()) coords.push_back(field.from(x));
  return ProjPoint(std::move(coords));
}

}  // namespace

IdealizerRing::IdealizerRing(TwistRing ring, ProjPoint c)
    : ring_(std::move(ring)),
      c_(into_field(c, ring_.field())),
      ideal_(GradedIdeal::point(c_, ring_.field())) {
  if (c_.d() != ring_.d()) throw std::invalid_argument("IdealizerRing: point has wrong length");
}

GradedSubspace IdealizerRing::constrained_piece(int n, std::span<const int> source_degrees) const {
  GradedSubspace out = ring_.full_piece(n);
  for (int j : source_degrees) {
    std::vector<HomogPoly> gens;
    for (const auto& g : I_piece(j).basis_polys()) gens.push_back(ring_.phi_power(n).apply(g));
    out = intersect(out, colon_piece(field(), gens, I_piece(j + n), n));
    if (out.dim() == 0) break;
  }
  return out;
}

GradedSubspace IdealizerRing::idealizer_piece(int n) const {
  if (n < 0) throw std::invalid_argument("idealizer_piece: negative degree");
  if (n == 0) return ring_.full_piece(0);
  const int one = 1;
  return constrained_piece(n, std::span(&one, 1));
}

GradedSubspace IdealizerRing::idealizer_piece_unreduced(int n, int j_max) const {
  if (n < 0) throw std::invalid_argument("idealizer_piece: negative degree");
  std::vector<int> js;
  for (int j = 1; j <= j_max; ++j) js.push_back(j);
  return constrained_piece(n, js);
}

const GradedSubspace& IdealizerRing::T_piece(int n) const {
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->t_pieces.find(n); it != memo_->t_pieces.end()) return it->second;
  }
  GradedSubspace piece = idealizer_piece(n);
  std::lock_guard lock(memo_->mutex);
  return memo_->t_pieces.emplace(n, std::move(piece)).first->second;
}

bool IdealizerRing::orbit_distinct(int max_degree) const {
  return distinct_window(orbit_points(ring_.phi(), c_, max_degree));
}

IdealizerCheck IdealizerRing::check_T_equals_k_plus_I(int max_degree) const {
  IdealizerCheck out;
  out.max_degree = max_degree;
  out.orbit_distinct = orbit_distinct(max_degree);
  out.passed = out.orbit_distinct;
  for (int n = 1; n <= max_degree; ++n) {
    const GradedSubspace& t = T_piece(n);
    out.dims.push_back(t.dim());
    const bool ok = t == I_piece(n) && t.dim() + 1 == ring_.dim(n);
    if (!ok && !out.first_failure) {
      out.first_failure = n;
      out.passed = false;
    }
  }
  return out;
}

GradedSubspace IdealizerRing::IS_piece(int m) const {
  GradedSubspace acc(Ambient::poly(d(), m), field());
  for (int i = 0; i < m && acc.codim() > 0; ++i) {
    acc = sum(acc, ring_.product(I_piece(m - i), ring_.full_piece(i)));
  }
  return acc;
}

WindowSeries IdealizerRing::s_mod_is_dims(int max_degree, int trailing) const {
  std::vector<std::size_t> dims;
  for (int m = 0; m <= max_degree; ++m) dims.push_back(IS_piece(m).codim());
  return make_window_series(std::move(dims), trailing);
}

std::vector<std::size_t> IdealizerRing::s_mod_t_dims(int max_degree) const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(T_piece(n).codim());
  return out;
}

GradedSubspace IdealizerRing::T_product(int a, int b) const {
  return ring_.product(T_piece(a), T_piece(b));
}

WindowSeries IdealizerRing::algebra_generator_degrees(int max_degree, int trailing) const {
  std::vector<std::size_t> counts{0};
  for (int n = 1; n <= max_degree; ++n) {
    GradedSubspace decomposable(Ambient::poly(d(), n), field());
    const GradedSubspace& t = T_piece(n);
    for (int i = 1; i < n && decomposable.dim() < t.dim(); ++i) {
      decomposable = sum(decomposable, T_product(i, n - i));
    }
    counts.push_back(quotient_dim(t, decomposable));
  }
  return make_window_series(std::move(counts), trailing);
}

bool IdealizerRing::veronese_gen_in_degree_one(int n) const {
  if (n < 1) throw std::invalid_argument("veronese_gen_in_degree_one: n must be positive");
  return T_product(n, n) == T_piece(2 * n);
}

VeroneseComparison IdealizerRing::veronese_idealizer_compare(int n, int max_degree,
                                                             int j_cap) const {
  if (n < 1) throw std::invalid_argument("veronese_idealizer_compare: n must be positive");
  VeroneseComparison out;
  out.n = n;
  out.max_degree = max_degree;
  out.j_cap = j_cap > 0 ? j_cap : (max_degree + 1) / 2 + 1;
  std::vector<int> source;
  for (int j = 1; j <= out.j_cap; ++j) source.push_back(n * j);
  for (int m = 0; m <= max_degree; ++m) {
    const GradedSubspace& t = T_piece(n * m);
    const GradedSubspace r = m == 0 ? ring_.full_piece(0) : constrained_piece(n * m, source);
    out.t_dims.push_back(t.dim());
    out.r_dims.push_back(r.dim());
    out.agree.push_back(t == r);
  }
  for (int m = max_degree; m >= 0 && out.agree[m]; --m) out.first_agreement = m;
  return out;
}

}  // namespace twl
