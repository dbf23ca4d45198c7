#include "twistlab/monomial.hpp"

#include <numeric>
#include <stdexcept>

namespace twl {

std::size_t binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (long i = 1; i <= k; ++i) {
    r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  }
  return r;
}

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  }
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

Monomial Monomial::variable(int num_vars, int index) {
  std::vector<int> e(num_vars, 0);
  e.at(index) = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.num_vars() != num_vars()) {
    throw std::invalid_argument("monomials over different variable counts");
  }
  std::vector<int> e(exps_);
  for (int i = 0; i < num_vars(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  // larger exponent vector comes first
  return b.exps_ <=> a.exps_;
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < num_vars(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i);
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {

void enumerate(int pos, int remaining, std::vector<int>& current, std::vector<Monomial>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (pos == last) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[pos] = e;
    enumerate(pos + 1, remaining - e, current, out);
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(int d, int n) {
  if (d < 0) throw std::invalid_argument("monomial_basis: d must be nonnegative");
  std::vector<Monomial> out;
  if (n < 0) return out;
  out.reserve(basis_size(d, n));
  std::vector<int> current(d + 1, 0);
  enumerate(0, n, current, out);
  return out;
}

std::size_t monomial_index(const int* exps, int num_vars, int degree) {
  std::size_t idx = 0;
  int remaining = degree;
  const int d = num_vars - 1;
  for (int i = 0; i < d; ++i) {
    // monomials sharing the prefix but with a larger exponent at i come first
    const int parts = d - i;  // variables i+1..d
    for (int v = remaining; v > exps[i]; --v) {
      idx += binomial(remaining - v + parts - 1, parts - 1);
    }
    remaining -= exps[i];
  }
  return idx;
}

std::size_t monomial_index(const Monomial& m) {
  return monomial_index(m.exponents().data(), m.num_vars(), m.degree());
}

}  // namespace twl
