#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistlab/automap.hpp"
#include "twistlab/linalg.hpp"
#include "twistlab/poly.hpp"

namespace twl {

/// A graded ideal of U given by homogeneous generators. Through the twist
/// correspondence it is also the graded left ideal of S with the same
/// generators. Pieces are computed on demand and memoized; copies share the
/// memo, and concurrent readers are serialized on its mutex.
class GradedIdeal {
 public:
  GradedIdeal() = default;
  GradedIdeal(int d, Field field, std::vector<HomogPoly> generators);

  static GradedIdeal zero(int d, const Field& field);
  /// U_{>=1} = (x_0, ..., x_d).
  static GradedIdeal irrelevant(int d, const Field& field);
  /// All forms vanishing at p; each piece is the kernel of evaluation at p.
  static GradedIdeal point(const ProjPoint& p, const Field& field);

  int d() const { return d_; }
  const Field& field() const { return field_; }
  const std::vector<HomogPoly>& generators() const { return gens_; }
  const std::optional<ProjPoint>& vanishing_point() const { return point_; }

  const GradedSubspace& piece(int n) const;

  /// The image ideal phi(J). For point ideals this is the point ideal of
  /// pullback_point(phi, p).
  GradedIdeal transformed(const AutoMap& phi) const;

  std::string describe() const;

 private:
  GradedSubspace compute_piece(int n) const;

  struct Memo {
    std::mutex mutex;
    std::map<int, GradedSubspace> pieces;
  };

  int d_ = 0;
  Field field_;
  std::vector<HomogPoly> gens_;
  std::optional<ProjPoint> point_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// A homogeneous element of S: same underlying form, twisted product.
struct TwistedElement {
  HomogPoly value;
  int degree() const { return value.degree(); }
};

struct OppositeCheck {
  bool passed = true;
  std::size_t pairs_checked = 0;
  int max_degree = 0;
  /// First failing pair (f in S_a, g in S_b) in enumeration order.
  std::optional<std::pair<Monomial, Monomial>> first_failure;
};

/// The left Zhang twist S = S(phi) of U = k[x_0..x_d].
///
/// Multiplication twists the LEFT factor by the degree of the RIGHT one:
/// for f in S_m and g in S_n, f * g = phi^n(f) o g. In particular
/// x_1 * x_0 = p_1 (x_0 * x_1) for diagonal phi.
class TwistRing {
 public:
  explicit TwistRing(AutoMap phi, int max_degree = 10);

  int d() const { return phi_.d(); }
  const Field& field() const { return field_; }
  const AutoMap& phi() const { return phi_; }
  int max_degree() const { return max_degree_; }
  std::size_t dim(int n) const { return basis_size(d(), n); }

  /// phi^k; powers up to the cache radius are built in the constructor,
  /// larger ones on first use.
  const AutoMap& phi_power(long k) const;

  TwistedElement mul(const TwistedElement& f, const TwistedElement& g) const;

  /// phi^k applied to every vector of V (polynomial ambient).
  GradedSubspace transform(const GradedSubspace& v, long k) const;
  /// Span of all twisted products V * W = phi^b(V) o W, with W in degree b.
  GradedSubspace product(const GradedSubspace& v, const GradedSubspace& w) const;

  GradedSubspace full_piece(int n) const {
    return GradedSubspace::full(Ambient::poly(d(), n), field_);
  }

  /// Pieces J_0..J_N of the left ideal S * gens, built by
  /// J_{n+1} = S_1 * J_n + (generators of degree n+1).
  std::map<int, GradedSubspace> left_ideal_pieces(std::span<const TwistedElement> gens,
                                                  int max_degree) const;

  /// Pieces of f S: (fS)_m = phi^{m-n}(f) o U_{m-n} for m >= n, zero below.
  std::map<int, GradedSubspace> right_ideal_pieces(const TwistedElement& f,
                                                   int max_degree) const;

  /// Exhaustive check over monomial pairs with a + b <= max_degree that
  /// psi(f * g) = psi(g) *' psi(f), where *' is the twist of U by phi^{-1}
  /// and psi acts on degree n as phi^{-n}.
  OppositeCheck opposite_iso_check(int max_degree) const;

 private:
  AutoMap phi_;
  Field field_;
  int max_degree_;
  long cache_radius_;
  std::vector<AutoMap> powers_;  // index k + cache_radius_

  struct Memo {
    std::mutex mutex;
    std::map<long, AutoMap> powers;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// The field an automorphism's entries live in.
Field field_of(const AutoMap& phi);

}  // namespace twl
