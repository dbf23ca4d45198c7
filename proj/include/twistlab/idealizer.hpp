#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "twistlab/twist_ring.hpp"

namespace twl {

/// A dimension sequence observed on a finite window 0..window. "Eventually
/// zero" is only ever claimed as observed: stable_from is set when the
/// sequence ends with at least `trailing` zeros, and names where that final
/// zero run begins.
struct WindowSeries {
  std::vector<std::size_t> values;
  int window = 0;
  int trailing = 3;
  std::optional<int> stable_from;
  std::size_t trailing_zero_count() const;
};

WindowSeries make_window_series(std::vector<std::size_t> values, int trailing);

struct IdealizerCheck {
  bool orbit_distinct = false;
  bool passed = false;
  int max_degree = 0;
  std::vector<std::size_t> dims;  // dim T_n for n = 1..N
  std::optional<int> first_failure;
};

struct VeroneseComparison {
  int n = 1;
  int max_degree = 0;
  int j_cap = 0;
  std::vector<bool> agree;           // index m = 0..N
  std::vector<std::size_t> t_dims;   // dim T_{nm}
  std::vector<std::size_t> r_dims;   // dim R'_m
  std::optional<int> first_agreement;  // least D with agreement on D..N
};

/// The idealizer T = {s in S : I s subset of I} of the point ideal I = I(c)
/// inside S = S(phi), materialized degree by degree.
class IdealizerRing {
 public:
  IdealizerRing(TwistRing ring, ProjPoint c);

  const TwistRing& ring() const { return ring_; }
  const ProjPoint& point() const { return c_; }
  int d() const { return ring_.d(); }
  const Field& field() const { return ring_.field(); }
  const GradedIdeal& ideal() const { return ideal_; }

  const GradedSubspace& I_piece(int n) const { return ideal_.piece(n); }
  /// Memoized idealizer_piece.
  const GradedSubspace& T_piece(int n) const;

  /// {x in S_n : phi^n(I_1) o x subset of I_{n+1}}, which is I_1 x subset of I.
  GradedSubspace idealizer_piece(int n) const;
  /// The same set with every constraint I_j x subset of I_{j+n}, 1 <= j <= j_max.
  GradedSubspace idealizer_piece_unreduced(int n, int j_max) const;

  /// Orbit points c_{-N}..c_N pairwise distinct.
  bool orbit_distinct(int max_degree) const;

  IdealizerCheck check_T_equals_k_plus_I(int max_degree) const;

  /// (IS)_m = sum over i < m of I_{m-i} * S_i.
  GradedSubspace IS_piece(int m) const;
  WindowSeries s_mod_is_dims(int max_degree, int trailing = 3) const;
  /// dim S_n - dim T_n for n = 0..N.
  std::vector<std::size_t> s_mod_t_dims(int max_degree) const;

  /// Generators of T needed in each degree 0..N (degree 0 is always 0).
  WindowSeries algebra_generator_degrees(int max_degree, int trailing = 3) const;

  /// Span of twisted products T_a * T_b.
  GradedSubspace T_product(int a, int b) const;

  /// Whether T_n * T_n = T_{2n}.
  bool veronese_gen_in_degree_one(int n) const;

  /// Compares T^{(n)}_m = T_{nm} with the idealizer R'_m of I' = I^{(n)} in
  /// S' = S^{(n)}, imposing I'_j R'_m subset of I'_{j+m} for j <= j_cap.
  /// j_cap <= 0 picks ceil(N/2) + 1.
  VeroneseComparison veronese_idealizer_compare(int n, int max_degree, int j_cap = 0) const;

 private:
  GradedSubspace constrained_piece(int n, std::span<const int> source_degrees) const;

  TwistRing ring_;
  ProjPoint c_;
  GradedIdeal ideal_;

  struct Memo {
    std::mutex mutex;
    std::map<int, GradedSubspace> t_pieces;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

}  // namespace twl
