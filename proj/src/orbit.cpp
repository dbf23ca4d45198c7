#include "twistlab/orbit.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "twistlab/elimination.hpp"
#include "twistlab/monomial.hpp"

namespace twl {

const ProjPoint& OrbitWindow::at(int n) const {
  if (n < -radius || n > radius) {
    throw std::out_of_range("orbit index " + std::to_string(n) + " outside the window");
  }
  return points[n + radius];
}

OrbitWindow orbit_points(const AutoMap& phi, const ProjPoint& c, int radius) {
  if (radius < 0) throw std::invalid_argument("orbit_points: negative radius");
  if (phi.d() != c.d()) throw std::invalid_argument("orbit_points: point and map disagree on d");
  OrbitWindow w{c, radius, std::vector<ProjPoint>(2 * radius + 1)};
  w.points[radius] = c;
  const AutoMap inv = phi.inverse();
  for (int n = 1; n <= radius; ++n) {
    w.points[radius + n] = pullback_point(phi, w.points[radius + n - 1]);
    w.points[radius - n] = pullback_point(inv, w.points[radius - n + 1]);
  }
  return w;
}

bool distinct_window(const OrbitWindow& window) {
  const auto& pts = window.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) return false;
    }
  }
  return true;
}

namespace {

// Adds the prime factorization of n (n >= 1) into exps with the given sign.
void factor_into(mpz_class n, long sign, std::uint64_t bound,
                 std::map<std::uint64_t, long>& exps) {
  for (std::uint64_t q = 2; q <= bound && n > 1; q += (q == 2 ? 1 : 2)) {
    if (mpz_class(q) * q > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
      exps[q] += sign;
    }
  }
  if (n == 1) return;
  // no factor up to min(bound, sqrt(n)): prime if n <= bound^2
  if (mpz_class(bound) * bound < n || !n.fits_ulong_p()) {
    throw FactorBoundExceeded("cannot factor " + n.get_str() + " with prime bound " +
                              std::to_string(bound));
  }
  exps[n.get_ui()] += sign;
}

void normalize_sign(std::vector<long>& v) {
  for (long x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    return;
  }
}

}  // namespace

IndependenceCertificate multiplicative_independence(std::span<const mpq_class> p,
                                                    std::uint64_t prime_bound) {
  const std::size_t d = p.size();
  std::vector<std::map<std::uint64_t, long>> factored(d);
  std::vector<bool> negative(d);
  std::map<std::uint64_t, std::size_t> prime_row;
  for (std::size_t i = 0; i < d; ++i) {
    if (p[i] == 0) throw std::invalid_argument("multiplicative_independence: zero multiplier");
    negative[i] = sgn(p[i]) < 0;
    factor_into(abs(p[i].get_num()), 1, prime_bound, factored[i]);
    factor_into(p[i].get_den(), -1, prime_bound, factored[i]);
    std::erase_if(factored[i], [](const auto& kv) { return kv.second == 0; });
    for (const auto& [q, e] : factored[i]) prime_row.emplace(q, 0);
  }
  IndependenceCertificate cert;
  for (auto& [q, row] : prime_row) {
    row = cert.primes.size();
    cert.primes.push_back(q);
  }
  cert.exponents.assign(cert.primes.size(), std::vector<long>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& [q, e] : factored[i]) cert.exponents[prime_row[q]][i] = e;
  }

  // Column-style Hermite reduction A U = [H | 0] with U unimodular; the
  // columns of U facing zero columns of A span the integer kernel.
  std::vector<std::vector<mpz_class>> a(cert.primes.size(), std::vector<mpz_class>(d));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < d; ++i) a[r][i] = cert.exponents[r][i];
  }
  std::vector<std::vector<mpz_class>> u(d, std::vector<mpz_class>(d));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  const auto col_addmul = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
    for (auto& row : a) row[dst] -= f * row[src];
    for (auto& row : u) row[dst] -= f * row[src];
  };
  const auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  std::size_t lead = 0;
  for (std::size_t r = 0; r < a.size() && lead < d; ++r) {
    while (true) {
      std::size_t best = d;
      for (std::size_t c = lead; c < d; ++c) {
        if (a[r][c] != 0 && (best == d || abs(a[r][c]) < abs(a[r][best]))) best = c;
      }
      if (best == d) break;
      col_swap(lead, best);
      bool done = true;
      for (std::size_t c = lead + 1; c < d; ++c) {
        if (a[r][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[r][lead].get_mpz_t());
        col_addmul(c, lead, q);
        if (a[r][c] != 0) done = false;
      }
      if (done) {
        ++lead;
        break;
      }
    }
  }

  std::vector<std::vector<long>> kernel;
  for (std::size_t c = lead; c < d; ++c) {
    std::vector<long> v(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!u[i][c].fits_slong_p()) throw std::overflow_error("relation entry exceeds 64 bits");
      v[i] = u[i][c].get_si();
    }
    kernel.push_back(std::move(v));
  }
  if (kernel.empty()) return cert;

  // Restrict to the even-sign sublattice so the relation also holds for
  // negative multipliers.
  const auto odd = [&](const std::vector<long>& v) {
    long s = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (negative[i]) s += v[i];
    }
    return (s % 2) != 0;
  };
  std::vector<std::vector<long>> even;
  std::optional<std::vector<long>> first_odd;
  for (auto& v : kernel) {
    if (!odd(v)) {
      even.push_back(v);
    } else if (!first_odd) {
      first_odd = v;
    } else {
      std::vector<long> w(d);
      for (std::size_t i = 0; i < d; ++i) w[i] = v[i] - (*first_odd)[i];
      even.push_back(std::move(w));
    }
  }
  if (first_odd) {
    std::vector<long> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = 2 * (*first_odd)[i];
    even.push_back(std::move(w));
  }
  for (auto& v : even) normalize_sign(v);
  cert.independent = false;
  cert.relation_basis = std::move(even);
  cert.relation = cert.relation_basis.front();
  if (!verify_relation(p, cert.relation)) {
    throw std::logic_error("multiplicative_independence: relation failed to verify");
  }
  return cert;
}

bool verify_relation(std::span<const mpq_class> p, std::span<const long> relation) {
  if (p.size() != relation.size()) throw std::invalid_argument("verify_relation: size mismatch");
  mpq_class prod = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpz_class num = p[i].get_num();
    mpz_class den = p[i].get_den();
    const long e = relation[i];
    if (e < 0) std::swap(num, den);
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpq_class factor(pn, pd);
    factor.canonicalize();
    prod *= factor;
  }
  return prod == 1;
}

std::size_t general_position_rank(const Field& field, const OrbitWindow& window, int m,
                                  std::span<const int> indices) {
  const int d = window.center.d();
  const auto basis = monomial_basis(d, m);
  std::vector<Vec> rows;
  rows.reserve(indices.size());
  for (int idx : indices) {
    const ProjPoint& pt = window.at(idx);
    Vec row;
    row.reserve(basis.size());
    for (const auto& mono : basis) {
      Scalar v = field.one();
      for (int i = 0; i <= d; ++i) {
        if (mono[i] != 0) v *= field.from(pt[i]).pow(mono[i]);
      }
      row.push_back(std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return matrix_rank(field, rows, basis.size());
}

}  // namespace twl
