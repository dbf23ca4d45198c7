#include "doctest.h"
#include "support.hpp"
#include "twistlab/elimination.hpp"
#include "twistlab/segre.hpp"

using namespace twl;
using namespace twl::testing;

namespace {

IdealizerRing default_t(int n = 8) { return IdealizerRing(TwistRing(diag_map({2, 3}), n), point_of({1, 1, 1})); }

}  // namespace

TEST_CASE("diagonal ideal and K have the predicted dimensions") {
  const IdealizerRing t = default_t();
  const SegreLab lab(t);
  for (int m = 0; m <= 4; ++m) {
    const std::size_t dm = basis_size(2, m);
    CHECK(lab.diagonal_ideal_piece(m).dim() == dm * dm - basis_size(2, 2 * m));
    CHECK(lab.K_piece(m).dim() == (m == 0 ? 0 : (dm - 1) * (dm - 1)));
  }
  CHECK(lab.diagonal_ideal_piece(1).dim() == 3);
}

TEST_CASE("direct RREF construction agrees with the generic nullspace and intersection") {
  const IdealizerRing t = default_t();
  const SegreLab lab(t);
  const Field& f = t.field();
  for (int m = 1; m <= 3; ++m) {
    const Ambient amb = lab.ambient(m);
    // kernel of multiplication as the nullspace of its matrix
    const std::size_t out = basis_size(2, 2 * m);
    std::vector<Vec> mat(out, Vec(amb.dim, f.zero()));
    for (std::size_t c = 0; c < amb.dim; ++c) {
      Vec e(amb.dim, f.zero());
      e[c] = f.one();
      const Vec img = lab.multiply(m, e);
      for (std::size_t r = 0; r < out; ++r) mat[r][c] = img[r];
    }
    const GradedSubspace j = GradedSubspace::span(amb, f, nullspace(f, mat, amb.dim));
    CHECK(j == lab.diagonal_ideal_piece(m));
    // K as the span of all I_m (x) I_m products
    std::vector<Vec> kron;
    for (const auto& a : t.I_piece(m).basis()) {
      for (const auto& b : t.I_piece(m).basis()) {
        Vec v(amb.dim, f.zero());
        for (std::size_t p = 0; p < a.size(); ++p) {
          for (std::size_t q = 0; q < b.size(); ++q) v[p * a.size() + q] = a[p] * b[q];
        }
        kron.push_back(v);
      }
    }
    const GradedSubspace k = GradedSubspace::span(amb, f, kron);
    CHECK(k == lab.K_piece(m));
    const WitnessDegree w = lab.witness(m);
    CHECK(intersect(j, k).dim() == w.cap_dim);
    CHECK(w.cap_dim + basis_size(2, 2 * m) == (basis_size(2, m) - 1) * (basis_size(2, m) - 1) + 3);
  }
}

TEST_CASE("J o K from a single product agrees with the full sum over a + b = m") {
  const IdealizerRing t = default_t();
  const SegreLab lab(t);
  const Field& f = t.field();
  for (int m = 2; m <= 3; ++m) {
    std::vector<Vec> prods;
    for (int a = 1; a < m; ++a) {
      const int b = m - a;
      const GradedSubspace ja = lab.diagonal_ideal_piece(a);
      const GradedSubspace kb = lab.K_piece(b);
      for (const auto& x : ja.basis()) {
        for (const auto& y : kb.basis()) prods.push_back(lab.segre_mul(a, x, b, y));
      }
    }
    const GradedSubspace full = GradedSubspace::span(lab.ambient(m), f, prods);
    const WitnessDegree w = lab.witness(m);
    CHECK(full.dim() == w.jk_dim);
    CHECK(w.witness_dim == w.cap_dim - w.jk_dim);
    CHECK(w.jk_inside_cap);
    // J o K sits inside both
    CHECK(lab.diagonal_ideal_piece(m).contains(full));
    CHECK(lab.K_piece(m).contains(full));
  }
}

TEST_CASE("K membership by one-sided evaluation matches the subspace") {
  const IdealizerRing t = default_t();
  const SegreLab lab(t);
  const Field& f = t.field();
  for (int m = 1; m <= 3; ++m) {
    const GradedSubspace k = lab.K_piece(m);
    const std::size_t n = lab.ambient(m).dim;
    int inside = 0;
    for (int s = 0; s < 40; ++s) {
      Vec v(n, f.zero());
      if (s % 3 == 0) {
        for (const auto& b : k.basis()) {
          const Scalar c = f.from_int(small_int(-2, 2));
          for (std::size_t i = 0; i < n; ++i) v[i] += c * b[i];
        }
      } else if (s % 3 == 1) {
        v = lab.diagonal_ideal_piece(m).basis()[s % lab.diagonal_ideal_piece(m).dim()];
      } else {
        v = random_matrix(f, 1, n, 2)[0];
      }
      const bool oracle = k.contains(v);
      inside += oracle;
      CHECK(lab.in_K(m, v) == oracle);
    }
    CHECK(inside > 0);
  }
}

TEST_CASE("T (x)^s T equals K in positive degree") {
  const IdealizerRing t = default_t();
  const SegreLab lab(t);
  for (int m = 1; m <= 4; ++m) CHECK(lab.tensor_piece(t.T_piece(m), t.T_piece(m)) == lab.K_piece(m));
}

TEST_CASE("witness dimensions and phi (x) phi invariance") {
  const IdealizerRing t = default_t();
  const SegreLab lab(t);
  const WitnessReport rep = lab.witness_dims(4);
  for (int m = 1; m <= 4; ++m) {
    CHECK(rep.degrees[m].witness_dim >= 1);
    CHECK(lab.diagonal_invariant(m));
  }
  CHECK(rep.nonvanishing_from);
  CHECK(rep.degrees[2].cap_dim == 13);
  CHECK(rep.degrees[2].jk_dim == 12);
}

TEST_CASE("local witness w = u1 v2 - u2 v1") {
  for (int d : {2, 3, 4}) {
    CAPTURE(d);
    const LocalWitness w = local_witness_check(d);
    CHECK(w.passed);
    CHECK(w.w_in_J_explicit);
    CHECK(w.w_in_J_linear);
    CHECK(w.w_in_K);
    CHECK(w.products_degree_three);
    CHECK(w.w_nonzero_degree_two);
    CHECK(w.control_rejected);
  }
  CHECK_THROWS(local_witness_check(1));
}
