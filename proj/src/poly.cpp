#include "twistlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace twl {

HomogPoly::HomogPoly(int d, int degree) : d_(d), degree_(degree) {
  if (d < 0 || degree < 0) throw std::invalid_argument("HomogPoly: negative d or degree");
}

HomogPoly HomogPoly::from_terms(int d, int degree, std::vector<Term> terms) {
  HomogPoly p(d, degree);
  for (const auto& t : terms) {
    if (t.monomial.num_vars() != d + 1) {
      throw std::invalid_argument("term " + t.monomial.to_string() + " has wrong variable count");
    }
    if (t.monomial.degree() != degree) {
      throw std::invalid_argument("term " + t.monomial.to_string() + " is not of degree " +
                                  std::to_string(degree));
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff.is_zero(); });
  return p;
}

HomogPoly HomogPoly::from_monomial(const Monomial& m, Scalar coeff) {
  return from_terms(m.num_vars() - 1, m.degree(), {Term{m, std::move(coeff)}});
}

HomogPoly HomogPoly::constant(int d, Scalar value) {
  return from_terms(d, 0, {Term{Monomial::one(d + 1), std::move(value)}});
}

HomogPoly HomogPoly::from_dense(int d, int degree, const Vec& coords) {
  if (coords.size() != basis_size(d, degree)) {
    throw std::invalid_argument("from_dense: coordinate count does not match dim U_n");
  }
  HomogPoly p(d, degree);
  const auto basis = monomial_basis(d, degree);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i].is_zero()) p.terms_.push_back(Term{basis[i], coords[i]});
  }
  return p;
}

Vec HomogPoly::to_dense() const {
  Vec out(basis_size(d_, degree_));
  for (const auto& t : terms_) out[monomial_index(t.monomial)] = t.coeff;
  return out;
}

void HomogPoly::check_compatible(const HomogPoly& other) const {
  if (d_ != other.d_) throw std::invalid_argument("polynomials over different rings");
  if (degree_ != other.degree_) {
    throw std::invalid_argument("adding forms of degree " + std::to_string(degree_) + " and " +
                                std::to_string(other.degree_));
  }
}

HomogPoly HomogPoly::operator-() const {
  HomogPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& rhs) {
  check_compatible(rhs);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->monomial < a->monomial) {
      merged.push_back(*b++);
    } else {
      Scalar c = a->coeff + b->coeff;
      if (!c.is_zero()) merged.push_back(Term{a->monomial, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& rhs) { return *this += -rhs; }

HomogPoly& HomogPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const HomogPoly& a, const HomogPoly& b) {
  if (a.d_ != b.d_ || a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;  // zero forms compare equal across degrees
  if (a.degree_ != b.degree_) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) ||
        !(a.terms_[i].coeff == b.terms_[i].coeff)) {
      return false;
    }
  }
  return true;
}

std::string HomogPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string c = t.coeff.to_string();
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool bare = t.monomial.degree() == 0;
    if (bare) {
      out += c;
    } else if (c == "1") {
      out += t.monomial.to_string();
    } else {
      out += c + "*" + t.monomial.to_string();
    }
  }
  return out;
}

HomogPoly poly_mul(const HomogPoly& f, const HomogPoly& g) {
  if (f.d() != g.d()) throw std::invalid_argument("poly_mul: dimension mismatch");
  const int d = f.d();
  const int deg = f.degree() + g.degree();
  Vec acc(basis_size(d, deg));
  std::vector<bool> touched(acc.size(), false);
  std::vector<int> e(d + 1);
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      for (int i = 0; i <= d; ++i) e[i] = a.monomial[i] + b.monomial[i];
      const std::size_t k = monomial_index(e.data(), d + 1, deg);
      acc[k] += a.coeff * b.coeff;
      touched[k] = true;
    }
  }
  std::vector<HomogPoly::Term> terms;
  const auto basis = monomial_basis(d, deg);
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (touched[k] && !acc[k].is_zero()) terms.push_back({basis[k], acc[k]});
  }
  return HomogPoly::from_terms(d, deg, std::move(terms));
}

Scalar evaluate_at(const HomogPoly& f, std::span<const Scalar> coords) {
  if (coords.size() != static_cast<std::size_t>(f.d() + 1)) {
    throw std::invalid_argument("evaluate: point has wrong number of coordinates");
  }
  Scalar total(0);
  for (const auto& t : f.terms()) {
    Scalar v = t.coeff;
    for (int i = 0; i <= f.d(); ++i) {
      if (t.monomial[i] != 0) v *= coords[i].pow(t.monomial[i]);
    }
    total += v;
  }
  return total;
}

Vec dense_mul(int d, int a, const Vec& f, int b, const Vec& g) {
  if (f.size() != basis_size(d, a) || g.size() != basis_size(d, b)) {
    throw std::invalid_argument("dense_mul: vector sizes do not match degrees");
  }
  const auto fb = monomial_basis(d, a);
  const auto gb = monomial_basis(d, b);
  Vec out(basis_size(d, a + b));
  std::vector<int> e(d + 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j].is_zero()) continue;
      for (int v = 0; v <= d; ++v) e[v] = fb[i][v] + gb[j][v];
      out[monomial_index(e.data(), d + 1, a + b)] += f[i] * g[j];
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, int d) : text_(text), d_(d) {}

  std::vector<HomogPoly::Term> parse() {
    std::vector<HomogPoly::Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      terms.push_back(parse_term(sign));
      first = false;
      skip_ws();
    }
    return terms;
  }

 private:
  HomogPoly::Term parse_term(int sign) {
    mpq_class coeff = sign;
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff *= parse_number();
      have_factor = true;
      skip_ws();
      if (peek() == '/') {
        get();
        skip_ws();
        mpq_class den = parse_number();
        if (den == 0) fail("zero denominator");
        coeff /= den;
        skip_ws();
      }
    }
    std::vector<int> exps(d_ + 1, 0);
    while (!at_end()) {
      if (peek() == '*') {
        get();
        skip_ws();
      }
      if (peek() != 'x') {
        if (!have_factor || peek() == '*') fail("expected variable");
        break;
      }
      get();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
      const long idx = parse_number().get_num().get_si();
      if (idx < 0 || idx > d_) fail("variable x" + std::to_string(idx) + " out of range");
      long e = 1;
      skip_ws();
      if (peek() == '^') {
        get();
        skip_ws();
        e = parse_number().get_num().get_si();
      }
      exps[idx] += static_cast<int>(e);
      have_factor = true;
      skip_ws();
      if (peek() == '+' || peek() == '-') break;
    }
    if (!have_factor) fail("empty term");
    coeff.canonicalize();
    return {Monomial(std::move(exps)), Scalar(coeff)};
  }

  mpq_class parse_number() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(get());
    if (digits.empty()) fail("expected number");
    return mpq_class(mpz_class(digits));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + std::string(text_) + "': " + what +
                                " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return text_[pos_++]; }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

HomogPoly parse_poly(std::string_view text, int d, int zero_degree) {
  auto terms = PolyParser(text, d).parse();
  int degree = -1;
  for (const auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (degree >= 0 && t.monomial.degree() != degree) {
      throw std::invalid_argument("polynomial '" + std::string(text) + "' is not homogeneous");
    }
    degree = t.monomial.degree();
  }
  if (degree < 0) return HomogPoly(d, zero_degree);
  std::erase_if(terms, [](const HomogPoly::Term& t) { return t.coeff.is_zero(); });
  return HomogPoly::from_terms(d, degree, std::move(terms));
}

}  // namespace twl
