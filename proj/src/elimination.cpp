#include "twistlab/elimination.hpp"

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "twistlab/kernels/modp.hpp"

namespace twl {

namespace {

constexpr std::int64_t kInt64Bound = std::int64_t{1} << 62;

// ---- integer arithmetic traits -------------------------------------------

struct CheckedInt64 {
  using type = std::int64_t;

  static type from(const mpz_class& z) {
    if (!z.fits_slong_p() || abs(z) > kInt64Bound) throw Int64Overflow{};
    return z.get_si();
  }
  static mpz_class to_mpz(type v) { return mpz_class(static_cast<long>(v)); }
  static bool is_zero(type v) { return v == 0; }
  static bool is_neg(type v) { return v < 0; }
  static type neg(type v) { return -v; }
  static type abs_of(type v) { return v < 0 ? -v : v; }
  static bool abs_less(type a, type b) { return abs_of(a) < abs_of(b); }
  static type gcd(type a, type b) { return std::gcd(a, b); }
  static type div(type a, type b) { return a / b; }
  static bool is_one(type v) { return v == 1; }
  // a*x - b*y
  static type axmby(type a, type x, type b, type y) {
    type p, q, r;
    if (__builtin_mul_overflow(a, x, &p) || __builtin_mul_overflow(b, y, &q) ||
        __builtin_sub_overflow(p, q, &r) || r > kInt64Bound || r < -kInt64Bound) {
      throw Int64Overflow{};
    }
    return r;
  }
  static type mul(type a, type x) {
    type p;
    if (__builtin_mul_overflow(a, x, &p) || p > kInt64Bound || p < -kInt64Bound) {
      throw Int64Overflow{};
    }
    return p;
  }
};

struct BigInt {
  using type = mpz_class;

  static type from(const mpz_class& z) { return z; }
  static const mpz_class& to_mpz(const type& v) { return v; }
  static bool is_zero(const type& v) { return sgn(v) == 0; }
  static bool is_neg(const type& v) { return sgn(v) < 0; }
  static type neg(const type& v) { return -v; }
  static bool abs_less(const type& a, const type& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  static type gcd(const type& a, const type& b) {
    type g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static type div(const type& a, const type& b) {
    type q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static bool is_one(const type& v) { return v == 1; }
  static type axmby(const type& a, const type& x, const type& b, const type& y) {
    type r = a * x;
    mpz_submul(r.get_mpz_t(), b.get_mpz_t(), y.get_mpz_t());
    return r;
  }
  static type mul(const type& a, const type& x) { return a * x; }
};

// ---- Q rows to primitive integer rows ------------------------------------

std::vector<std::vector<mpz_class>> integer_rows(const std::vector<Vec>& rows, std::size_t ncols) {
  std::vector<std::vector<mpz_class>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != ncols) throw std::invalid_argument("row_reduce: ragged rows");
    mpz_class lcm = 1;
    bool nonzero = false;
    for (const auto& x : row) {
      if (x.is_zero()) continue;
      nonzero = true;
      const auto& den = x.rational().get_den();
      if (den != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    if (!nonzero) continue;
    std::vector<mpz_class> ints(ncols);
    mpz_class g = 0;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (row[j].is_zero()) continue;
      const auto& q = row[j].rational();
      ints[j] = q.get_num() * (lcm / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[j].get_mpz_t());
    }
    if (g != 1) {
      for (auto& v : ints) {
        if (sgn(v) != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
      }
    }
    out.push_back(std::move(ints));
  }
  return out;
}

// ---- fraction-free Gauss-Jordan ------------------------------------------

template <class Ops>
class IntEliminator {
 public:
  using Int = typename Ops::type;

  IntEliminator(const std::vector<std::vector<mpz_class>>& rows, std::size_t ncols)
      : ncols_(ncols) {
    rows_.reserve(rows.size());
    for (const auto& r : rows) {
      std::vector<Int> ints(ncols);
      for (std::size_t j = 0; j < ncols; ++j) ints[j] = Ops::from(r[j]);
      rows_.push_back(std::move(ints));
    }
  }

  void forward() {
    const std::size_t n = rows_.size();
    for (std::size_t col = 0; col < ncols_ && rank_ < n; ++col) {
      std::size_t best = n;
      for (std::size_t i = rank_; i < n; ++i) {
        if (Ops::is_zero(rows_[i][col])) continue;
        if (best == n || Ops::abs_less(rows_[i][col], rows_[best][col])) best = i;
      }
      if (best == n) continue;
      std::swap(rows_[rank_], rows_[best]);
      for (std::size_t i = rank_ + 1; i < n; ++i) {
        if (!Ops::is_zero(rows_[i][col])) combine(rows_[i], rows_[rank_], col);
      }
      pivots_.push_back(col);
      ++rank_;
    }
    rows_.resize(rank_);
  }

  void backward() {
    for (std::size_t k = rank_; k-- > 0;) {
      const std::size_t col = pivots_[k];
      for (std::size_t i = 0; i < k; ++i) {
        if (!Ops::is_zero(rows_[i][col])) combine(rows_[i], rows_[k], col);
      }
    }
  }

  std::size_t rank() const { return rank_; }

  Echelon to_rational() const {
    Echelon e;
    e.pivots = pivots_;
    e.rows.reserve(rank_);
    for (std::size_t k = 0; k < rank_; ++k) {
      const mpz_class lead = Ops::to_mpz(rows_[k][pivots_[k]]);
      Vec row(ncols_);
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (Ops::is_zero(rows_[k][j])) continue;
        row[j] = Scalar(mpq_class(Ops::to_mpz(rows_[k][j]), lead));
      }
      e.rows.push_back(std::move(row));
    }
    return e;
  }

 private:
  // target <- (a/g) target - (b/g) pivot_row, where a, b are the entries in col
  void combine(std::vector<Int>& target, const std::vector<Int>& pivot_row, std::size_t col) {
    const Int a = pivot_row[col];
    const Int b = target[col];
    const Int g = Ops::gcd(a, b);
    Int ca = Ops::div(a, g);
    Int cb = Ops::div(b, g);
    if (Ops::is_neg(ca)) {
      ca = Ops::neg(ca);
      cb = Ops::neg(cb);
    }
    const bool scale = !Ops::is_one(ca);
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (Ops::is_zero(pivot_row[j])) {
        if (scale && !Ops::is_zero(target[j])) target[j] = Ops::mul(ca, target[j]);
      } else {
        target[j] = Ops::axmby(ca, target[j], cb, pivot_row[j]);
      }
    }
    make_primitive(target);
  }

  static void make_primitive(std::vector<Int>& row) {
    Int g{};
    for (const auto& v : row) {
      if (Ops::is_zero(v)) continue;
      g = Ops::gcd(g, v);
      if (Ops::is_one(g)) return;
    }
    if (Ops::is_zero(g)) return;
    for (auto& v : row) {
      if (!Ops::is_zero(v)) v = Ops::div(v, g);
    }
  }

  std::size_t ncols_;
  std::vector<std::vector<Int>> rows_;
  std::vector<std::size_t> pivots_;
  std::size_t rank_ = 0;
};

template <class Ops>
Echelon reduce_with(const std::vector<std::vector<mpz_class>>& ints, std::size_t ncols) {
  IntEliminator<Ops> elim(ints, ncols);
  elim.forward();
  elim.backward();
  return elim.to_rational();
}

template <class Ops>
std::size_t rank_with(const std::vector<std::vector<mpz_class>>& ints, std::size_t ncols) {
  IntEliminator<Ops> elim(ints, ncols);
  elim.forward();
  return elim.rank();
}

template <class Fn64, class FnBig>
auto dispatch_path(IntPath path, Fn64&& small, FnBig&& big) {
  switch (path) {
    case IntPath::kInt64Only:
      return small();
    case IntPath::kBigOnly:
      return big();
    case IntPath::kAuto:
      break;
  }
  try {
    return small();
  } catch (const Int64Overflow&) {
    return big();
  }
}

// ---- F_p ------------------------------------------------------------------

class ModpEliminator {
 public:
  ModpEliminator(const Field& field, const std::vector<Vec>& rows, std::size_t ncols)
      : mod_(kernels::Modulus::make(field.modulus())),
        k_(kernels::active_kernels()),
        ncols_(ncols) {
    for (const auto& row : rows) {
      if (row.size() != ncols) throw std::invalid_argument("row_reduce: ragged rows");
      std::vector<std::uint32_t> r(ncols);
      bool nonzero = false;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (row[j].is_zero()) continue;
        r[j] = field.from(row[j]).residue();
        nonzero = true;
      }
      if (nonzero) rows_.push_back(std::move(r));
    }
  }

  void forward(bool normalize) {
    const std::size_t n = rows_.size();
    for (std::size_t col = 0; col < ncols_ && rank_ < n; ++col) {
      std::size_t best = rank_;
      while (best < n && rows_[best][col] == 0) ++best;
      if (best == n) continue;
      std::swap(rows_[rank_], rows_[best]);
      auto& piv = rows_[rank_];
      if (normalize && piv[col] != 1) {
        k_.scale(piv.data(), mod_.to_mont(inverse(piv[col])), mod_, ncols_);
      }
      const std::uint32_t inv_lead = normalize ? 1 : inverse(piv[col]);
      for (std::size_t i = rank_ + 1; i < n; ++i) eliminate(rows_[i], piv, col, inv_lead);
      pivots_.push_back(col);
      ++rank_;
    }
    rows_.resize(rank_);
  }

  void backward() {
    for (std::size_t k = rank_; k-- > 0;) {
      for (std::size_t i = 0; i < k; ++i) eliminate(rows_[i], rows_[k], pivots_[k], 1);
    }
  }

  std::size_t rank() const { return rank_; }

  Echelon to_echelon() const {
    Echelon e;
    e.pivots = pivots_;
    for (const auto& r : rows_) {
      Vec row(ncols_);
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (r[j] != 0) row[j] = Scalar::residue(r[j], mod_.p);
      }
      e.rows.push_back(std::move(row));
    }
    return e;
  }

 private:
  void eliminate(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& piv,
                 std::size_t col, std::uint32_t inv_lead) {
    const std::uint32_t b = target[col];
    if (b == 0) return;
    // factor = -b / lead
    std::uint64_t f = static_cast<std::uint64_t>(mod_.p - b) * inv_lead % mod_.p;
    k_.axpy(target.data(), piv.data(), mod_.to_mont(static_cast<std::uint32_t>(f)), mod_,
            ncols_);
  }

  std::uint32_t inverse(std::uint32_t v) const {
    return Scalar::residue(v, mod_.p).inverse().residue();
  }

  kernels::Modulus mod_;
  const kernels::ModpKernels& k_;
  std::size_t ncols_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
  std::size_t rank_ = 0;
};

}  // namespace

Echelon row_reduce(const Field& field, const std::vector<Vec>& rows, std::size_t ncols,
                   IntPath path) {
  if (field.is_prime()) {
    ModpEliminator elim(field, rows, ncols);
    elim.forward(true);
    elim.backward();
    return elim.to_echelon();
  }
  const auto ints = integer_rows(rows, ncols);
  return dispatch_path(
      path, [&] { return reduce_with<CheckedInt64>(ints, ncols); },
      [&] { return reduce_with<BigInt>(ints, ncols); });
}

std::size_t matrix_rank(const Field& field, const std::vector<Vec>& rows, std::size_t ncols,
                        IntPath path) {
  if (field.is_prime()) {
    ModpEliminator elim(field, rows, ncols);
    elim.forward(false);
    return elim.rank();
  }
  const auto ints = integer_rows(rows, ncols);
  return dispatch_path(
      path, [&] { return rank_with<CheckedInt64>(ints, ncols); },
      [&] { return rank_with<BigInt>(ints, ncols); });
}

std::vector<Vec> nullspace(const Field& field, const std::vector<Vec>& rows, std::size_t ncols) {
  const Echelon e = row_reduce(field, rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(ncols);
    v[f] = field.one();
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      if (!e.rows[k][f].is_zero()) v[e.pivots[k]] = -e.rows[k][f];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace twl
