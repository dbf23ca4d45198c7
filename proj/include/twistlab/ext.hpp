#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twistlab/idealizer.hpp"
#include "twistlab/twist_ring.hpp"

namespace twl {

/// (U/J)[shift]; J = 0 gives a shifted copy of U.
struct ModuleSummand {
  GradedIdeal ideal;
  int shift = 0;
};

/// A finite direct sum of shifted cyclic modules U/J.
class GradedModule {
 public:
  GradedModule() = default;
  explicit GradedModule(std::vector<ModuleSummand> summands);

  static GradedModule free(int d, const Field& field, int shift = 0);
  static GradedModule quotient(GradedIdeal ideal, int shift = 0);

  const std::vector<ModuleSummand>& summands() const { return summands_; }
  GradedModule shifted(int s) const;
  GradedModule direct_sum(const GradedModule& other) const;

  std::size_t dim(int n) const;

 private:
  std::vector<ModuleSummand> summands_;
};

/// Dual Koszul complex of U/(l_1..l_d) with coefficients in M:
/// C^i_n = M_{n+i}^{C(d,i)}, with
/// delta(m e_S) = sum over j not in S of (-1)^{#{s in S : s < j}} l_j m e_{S+j}.
/// Its cohomology in internal degree n is Ext^i_U(U/I, M)_n.
class KoszulComplex {
 public:
  /// Throws std::invalid_argument unless the forms are d linearly
  /// independent linear forms in d+1 variables.
  KoszulComplex(const Field& field, std::vector<HomogPoly> linear_forms);
  static KoszulComplex for_point(const ProjPoint& c, const Field& field);

  int length() const { return static_cast<int>(forms_.size()); }
  int d() const { return length(); }
  const Field& field() const { return field_; }
  const std::vector<HomogPoly>& forms() const { return forms_; }

  std::size_t cochain_dim(int i, const GradedModule& m, int n) const;
  /// Matrix of delta^i : C^i_n -> C^{i+1}_n, one row per source basis vector.
  std::vector<Vec> differential(int i, const GradedModule& m, int n) const;
  std::size_t differential_rank(int i, const GradedModule& m, int n) const;

 private:
  Field field_;
  std::vector<HomogPoly> forms_;
};

std::size_t ext_U(const KoszulComplex& k, int i, const GradedModule& m, int n);

/// Ext^i_S(S/I, S/J)_n computed as Ext^i_U(U/I, U/phi^{-n}(J))_n.
std::size_t ext_S_twisted(const IdealizerRing& t, int i, const GradedIdeal& j, int n);

/// dim {x in U_n : phi^n(I) o x subset of J} / J_n.
std::size_t hom_S_quotient(const IdealizerRing& t, const GradedIdeal& j, int n);

struct ProbeDegree {
  int m = 0;
  std::size_t coker_dim = 0;   // dim S/(fS + T) in degree m
  std::size_t tor_dim = 0;     // dim (fS cap T)/fT in degree m
  bool vanishes_at_orbit = false;  // f(c_{n-m}) == 0
};

struct ProbeRecord {
  std::string f;
  int degree = 0;
  int max_degree = 0;
  std::vector<ProbeDegree> degrees;  // m = n..N
  std::vector<int> support;           // m with coker_dim > 0
  std::vector<int> predicted_support; // m with vanishes_at_orbit
  std::size_t coker_total = 0;
  std::size_t tor_total = 0;
  bool consistent = false;  // support == predicted_support
};

/// Throws std::invalid_argument when f is zero or not in T_n.
ProbeRecord right_noeth_probe(const IdealizerRing& t, const HomogPoly& f, int max_degree);

struct ChiRow {
  int j = 0;
  std::vector<std::size_t> values;  // n = -N..N
  std::size_t total = 0;
  bool stabilized = false;  // window ends in at least `trailing` zeros
};

struct ChiTable {
  std::string ideal;
  int max_degree = 0;
  int trailing = 3;
  std::vector<ChiRow> rows;  // j = 0..d
};

ChiTable ext_table(const IdealizerRing& t, const GradedIdeal& j, int max_degree, int trailing = 3);

std::vector<ChiTable> chi_sample_report(const IdealizerRing& t,
                                        const std::vector<GradedIdeal>& family, int max_degree,
                                        int trailing = 3);

}  // namespace twl
