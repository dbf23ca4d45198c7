#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/idealizer.hpp"

namespace twl {

struct WitnessDegree {
  int m = 0;
  std::size_t j_dim = 0;    // diagonal ideal J_m
  std::size_t k_dim = 0;    // K_m = I_m (x) I_m
  std::size_t cap_dim = 0;  // (J cap K)_m
  std::size_t jk_dim = 0;   // (J o K)_m
  std::size_t witness_dim = 0;
  bool jk_inside_cap = false;
};

struct WitnessReport {
  int max_degree = 0;
  std::vector<WitnessDegree> degrees;  // m = 0..N
  /// Least m1 with witness_dim > 0 on every m1 <= m <= N (m1 >= 1).
  std::optional<int> nonvanishing_from;
};

/// The Segre square U (x)^s U = sum over m of U_m (x) U_m together with the
/// diagonal ideal J (the kernel of multiplication) and K = I (x)^s I.
class SegreLab {
 public:
  explicit SegreLab(const IdealizerRing& t);

  int d() const { return t_.d(); }
  const Field& field() const { return t_.field(); }
  Ambient ambient(int m) const { return Ambient::segre(d(), m); }

  /// Kernel of U_m (x) U_m -> U_{2m}, built class by class: for each monomial
  /// c of degree 2m the pairs (a, b) with ab = c contribute differences.
  GradedSubspace diagonal_ideal_piece(int m) const;
  GradedSubspace K_piece(int m) const;
  /// A (x) B for subspaces of the same U_m, via the Kronecker product of
  /// their echelon bases (which is again in echelon form).
  GradedSubspace tensor_piece(const GradedSubspace& a, const GradedSubspace& b) const;

  /// The multiplication map U_m (x) U_m -> U_{2m}.
  Vec multiply(int m, const Vec& x) const;
  /// Componentwise product (u (x) v)(u' (x) v') = uu' (x) vv'.
  Vec segre_mul(int a, const Vec& x, int b, const Vec& y) const;
  /// (phi (x) phi)(x).
  Vec apply_phi(int m, const Vec& x) const;
  /// Both one-sided evaluations at c vanish.
  bool in_K(int m, const Vec& x) const;

  /// Every basis vector of J_m stays in J_m under phi (x) phi.
  bool diagonal_invariant(int m) const;

  WitnessDegree witness(int m) const;
  WitnessReport witness_dims(int max_degree) const;

 private:
  const IdealizerRing& t_;
};

struct LocalWitness {
  int d = 0;
  bool w_in_J_explicit = false;  // w = u1 (v2 - u2) + u2 (u1 - v1)
  bool w_in_J_linear = false;    // degree-2 membership by linear algebra
  bool w_in_K = false;           // every term is some u_i v_j
  bool products_degree_three = false;  // all generator products of J'K' have degree 3
  bool w_nonzero_degree_two = false;
  bool control_rejected = false;  // u1 v1 is not in J'
  bool passed = false;
  std::string w;
};

/// The affine check with variables u_1..u_d, v_1..v_d; throws for d < 2.
LocalWitness local_witness_check(int d);

}  // namespace twl
