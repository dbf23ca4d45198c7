#include <algorithm>
#include <optional>

#include "doctest.h"
#include "support.hpp"
#include "twistlab/orbit.hpp"

using namespace twl;
using namespace twl::testing;

namespace {

mpq_class qpow(const mpq_class& x, long e) {
  mpq_class r = 1;
  const mpq_class b = e < 0 ? mpq_class(1 / x) : x;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

// any nonzero a in [-5,5]^k with prod p_i^{a_i} = 1
std::optional<std::vector<long>> brute_relation(const std::vector<mpq_class>& p) {
  const std::size_t k = p.size();
  std::vector<long> a(k, -5);
  while (true) {
    bool nonzero = false;
    mpq_class prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
      nonzero = nonzero || a[i] != 0;
      prod *= qpow(p[i], a[i]);
    }
    if (nonzero && prod == 1) return a;
    std::size_t i = 0;
    while (i < k && a[i] == 5) a[i++] = -5;
    if (i == k) return std::nullopt;
    ++a[i];
  }
}

}  // namespace

TEST_CASE("independence certificate agrees with a bounded brute-force relation search") {
  const std::vector<mpq_class> pool{2, -2, 3, -3, 4, -4, 6, mpq_class(1, 2), 9};
  int independent = 0, dependent = 0;
  auto run = [&](const std::vector<mpq_class>& p) {
    const IndependenceCertificate cert = multiplicative_independence(p);
    const auto brute = brute_relation(p);
    CHECK(cert.independent == !brute.has_value());
    if (!cert.independent) {
      ++dependent;
      CHECK(verify_relation(p, cert.relation));
      CHECK(cert.relation.size() == p.size());
      for (const auto& r : cert.relation_basis) CHECK(verify_relation(p, r));
      const auto first = std::find_if(cert.relation.begin(), cert.relation.end(), [](long x) { return x != 0; });
      REQUIRE(first != cert.relation.end());
      CHECK(*first > 0);
    } else {
      ++independent;
      CHECK(cert.relation.empty());
    }
  };
  for (std::size_t i = 0; i < pool.size(); ++i) {
    run({pool[i]});
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      run({pool[i], pool[j]});
      for (std::size_t k = j + 1; k < pool.size(); k += 2) run({pool[i], pool[j], pool[k]});
    }
  }
  CHECK(independent > 0);
  CHECK(dependent > 0);
}

TEST_CASE("named certificate examples") {
  const std::vector<mpq_class> a{2, 3};
  CHECK(multiplicative_independence(a).independent);
  const std::vector<mpq_class> b{2, 4};
  const auto cb = multiplicative_independence(b);
  CHECK_FALSE(cb.independent);
  CHECK(cb.relation == std::vector<long>{2, -1});
  const std::vector<mpq_class> c{2, 3, 6};
  const auto cc = multiplicative_independence(c);
  CHECK_FALSE(cc.independent);
  CHECK(cc.relation == std::vector<long>{1, 1, -1});
  // torsion: -1 has order two
  const std::vector<mpq_class> e{-1, 5};
  CHECK(multiplicative_independence(e).relation == std::vector<long>{2, 0});
  const std::vector<mpq_class> z{0, 5};
  CHECK_THROWS_AS(multiplicative_independence(z), std::invalid_argument);
  CHECK(verify_relation(b, std::vector<long>{2, -1}));
  CHECK_FALSE(verify_relation(b, std::vector<long>{1, -1}));
}

TEST_CASE("factoring beyond the prime bound is reported, not guessed") {
  const std::vector<mpq_class> p{mpq_class(mpz_class(1000003) * 1000033), 2};
  CHECK_THROWS_AS(multiplicative_independence(p, 1000), FactorBoundExceeded);
  // a single large prime cofactor is certified once the bound covers its root
  const std::vector<mpq_class> big{mpq_class(1000003), 2};
  CHECK(multiplicative_independence(big, 2000).independent);
}

TEST_CASE("independent multipliers give distinct orbits of a point off the coordinate hyperplanes") {
  const std::vector<std::vector<long>> cases{{2, 3}, {-2, 3}, {3, 5}, {2, 3, 5}};
  for (const auto& mult : cases) {
    std::vector<mpq_class> p(mult.begin(), mult.end());
    REQUIRE(multiplicative_independence(p).independent);
    Vec s;
    for (long x : mult) s.push_back(Scalar(x));
    const AutoMap phi = AutoMap::diagonal(s);
    Vec c(mult.size() + 1, Scalar(1));
    c[1] = Scalar(7);
    const OrbitWindow w = orbit_points(phi, ProjPoint(c), 50);
    CHECK(distinct_window(w));
    CHECK(w.at(1) == pullback_point(phi, w.at(0)));
    CHECK(w.at(-1) == point_image(phi, w.at(0)));
  }
  // dependent multipliers with torsion repeat
  const OrbitWindow rep = orbit_points(diag_map({-1, 1}), point_of({1, 1, 1}), 3);
  CHECK_FALSE(distinct_window(rep));
  // a point on a fixed hyperplane with a relation among the surviving multipliers repeats too
  const OrbitWindow fixed = orbit_points(diag_map({2, 3}), point_of({1, 0, 0}), 3);
  CHECK_FALSE(distinct_window(fixed));
}

TEST_CASE("general position rank examples") {
  const Field q = Field::rationals();
  const OrbitWindow w = orbit_points(diag_map({2, 3}), point_of({1, 1, 1}), 10);
  const std::vector<int> three{-1, 0, 1};
  CHECK(general_position_rank(q, w, 1, three) == 3);
  const std::vector<int> six{-2, -1, 0, 1, 2, 3};
  CHECK(general_position_rank(q, w, 2, six) == 6);
  // the constant orbit under the identity imposes one condition
  const OrbitWindow id = orbit_points(AutoMap::identity(2), point_of({1, 2, 3}), 4);
  CHECK(general_position_rank(q, id, 2, six) == 1);
  // diag(2, 1) keeps x2 = x0, so the orbit lies on a line
  const OrbitWindow line = orbit_points(diag_map({2, 1}), point_of({1, 1, 1}), 4);
  CHECK(general_position_rank(q, line, 1, three) == 2);
}
