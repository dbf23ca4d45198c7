// Acceptance criteria on the default instance: d = 2, p = (2, 3), c = (1:1:1),
// field Q, window N = 10. Every quantity compared here is an exact integer
// or an exact ring element, so each tolerance below is zero; only the wall
// time budgets are inexact.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <unistd.h>
#include <sstream>
#include <string>

#include "twistlab/commands.hpp"
#include "twistlab/ext.hpp"
#include "twistlab/orbit.hpp"
#include "twistlab/segre.hpp"

using namespace twl;

namespace {

constexpr int kWindow = 10;            // N
constexpr int kTrailing = 3;           // trailing zero degrees for "observed" claims
constexpr long kDimTolerance = 0;      // all dimension comparisons are exact
constexpr int kTriples = 200;          // associativity samples
constexpr std::uint64_t kSeed = 20240611;
constexpr int kSegreMax = 6;
constexpr int kOppositeMax = 6;
constexpr int kVeroneseN = 2;
constexpr int kVeroneseMax = 6;
constexpr int kBruteExponent = 5;      // relation search box [-5, 5]
constexpr double kBudgetSeconds = 60;  // per criterion
constexpr double kSegreBudgetSeconds = 300;

bool same(long a, long b) { return (a > b ? a - b : b - a) <= kDimTolerance; }

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

const IdealizerRing& instance() {
  static const IdealizerRing t = [] {
    const Vec p{Scalar(2), Scalar(3)};
    return IdealizerRing(TwistRing(AutoMap::diagonal(p), kWindow), ProjPoint(Vec{Scalar(1), Scalar(1), Scalar(1)}));
  }();
  return t;
}

HomogPoly var(int i) { return HomogPoly::variable(2, i); }

Outcome ac1() {
  Outcome o;
  const IdealizerRing& t = instance();
  for (int n = 1; n <= kWindow; ++n) {
    o.require(t.T_piece(n) == t.I_piece(n), "T_" + std::to_string(n) + " != I_" + std::to_string(n));
    o.require(same(static_cast<long>(t.T_piece(n).dim()), static_cast<long>(binomial(n + 2, 2)) - 1),
              "dim T_" + std::to_string(n));
  }
  o.require(t.check_T_equals_k_plus_I(kWindow).passed, "check_T_equals_k_plus_I");
  return o;
}

Outcome ac2() {
  Outcome o;
  const TwistRing& s = instance().ring();
  const TwistedElement x0{var(0)}, x1{var(1)};
  o.require(s.mul(x1, x0).value == s.mul(x0, x1).value * Scalar(2), "x1*x0 != 2 x0*x1");
  o.require(!(s.mul(x1, x0).value == s.mul(x0, x1).value), "commutative");
  std::mt19937_64 rng(kSeed);
  auto random_element = [&] {
    const int deg = static_cast<int>(rng() % 4);
    std::vector<HomogPoly::Term> terms;
    for (const auto& m : monomial_basis(2, deg)) {
      const long c = static_cast<long>(rng() % 11) - 5;
      if (c != 0) terms.push_back({m, Scalar(c)});
    }
    return TwistedElement{HomogPoly::from_terms(2, deg, std::move(terms))};
  };
  int bad = 0;
  for (int k = 0; k < kTriples; ++k) {
    const auto a = random_element(), b = random_element(), c = random_element();
    bad += !(s.mul(s.mul(a, b), c).value == s.mul(a, s.mul(b, c)).value);
  }
  o.require(bad == 0, std::to_string(bad) + " non-associative triples");
  return o;
}

Outcome ac3() {
  Outcome o;
  const IdealizerRing& t = instance();
  for (int n = 1; n <= 3; ++n) o.require(!t.veronese_gen_in_degree_one(n), "generated in degree 1 for n=" + std::to_string(n));
  const std::size_t prod = t.T_product(1, 1).dim();
  o.require(prod <= 4 && 4 < t.T_piece(2).dim(), "dim(T1 T1) <= 4 < 5 fails");
  return o;
}

Outcome ac4() {
  Outcome o;
  const WindowSeries s = instance().s_mod_is_dims(kWindow, kTrailing);
  o.require(s.stable_from.has_value() && *s.stable_from <= kWindow, "no observed m0");
  o.require(s.trailing_zero_count() >= static_cast<std::size_t>(kTrailing), "too few trailing zeros");
  const IdealizerRing control(TwistRing(AutoMap::identity(2), kWindow), instance().point());
  for (auto v : control.s_mod_is_dims(kWindow, kTrailing).values) o.require(v == 1, "identity control not constant 1");
  if (s.stable_from) o.detail = "m0 = " + std::to_string(*s.stable_from);
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto dims = instance().s_mod_t_dims(kWindow);
  for (int n = 1; n <= kWindow; ++n) o.require(same(static_cast<long>(dims[n]), 1), "dim (S/T)_" + std::to_string(n));
  return o;
}

Outcome ac6() {
  Outcome o;
  auto brute = [](const std::vector<mpq_class>& p) {
    const std::size_t k = p.size();
    std::vector<long> a(k, -kBruteExponent);
    while (true) {
      const bool nonzero = std::any_of(a.begin(), a.end(), [](long x) { return x != 0; });
      if (nonzero && verify_relation(p, a)) return true;
      std::size_t i = 0;
      while (i < k && a[i] == kBruteExponent) a[i++] = -kBruteExponent;
      if (i == k) return false;
      ++a[i];
    }
  };
  const std::vector<std::vector<mpq_class>> inputs{
      {2, 3}, {2, 4}, {2, 3, 6}, {-2, 3}, {4, 9}, {mpq_class(1, 2), 2}, {6, 9}, {3, mpq_class(1, 9)}, {-1, 3}};
  for (const auto& p : inputs) {
    const IndependenceCertificate cert = multiplicative_independence(p);
    o.require(cert.independent == !brute(p), "brute force disagrees");
    if (!cert.independent) o.require(verify_relation(p, cert.relation), "relation does not verify");
  }
  o.require(multiplicative_independence(inputs[0]).independent, "(2,3) not independent");
  const auto c24 = multiplicative_independence(inputs[1]);
  o.require(!c24.independent && c24.relation == std::vector<long>{2, -1}, "(2,4) relation");
  o.require(!multiplicative_independence(inputs[2]).independent, "(2,3,6) independent");
  return o;
}

Outcome ac7() {
  Outcome o;
  const IdealizerRing& t = instance();
  const KoszulComplex k(t.field(), t.I_piece(1).basis_polys());
  const GradedModule u = GradedModule::free(2, t.field());
  for (int n = -kWindow; n <= kWindow; ++n) {
    for (int i = 0; i < 2; ++i) o.require(ext_U(k, i, u, n) == 0, "ext_U lower degree nonzero");
  }
  const GradedIdeal zero = GradedIdeal::zero(2, t.field());
  for (int n = 0; n <= kWindow; ++n) o.require(ext_S_twisted(t, 2, zero, n) == 1, "Ext^2_S(S/I,S)_" + std::to_string(n));
  const std::vector<GradedModule> mods{
      u, GradedModule::quotient(t.ideal()), GradedModule::quotient(GradedIdeal(2, t.field(), {var(0)})),
      GradedModule::quotient(GradedIdeal::irrelevant(2, t.field()), 2),
      GradedModule::quotient(GradedIdeal::point(ProjPoint(Vec{Scalar(1), Scalar(5), Scalar(7)}), t.field()))};
  int cases = 0;
  for (const auto& m : mods) {
    for (int n = -kWindow; n <= kWindow; ++n) {
      long lhs = 0, rhs = 0;
      for (int i = 0; i <= 2; ++i) {
        const long s = i % 2 ? -1 : 1;
        lhs += s * static_cast<long>(ext_U(k, i, m, n));
        rhs += s * static_cast<long>(binomial(2, i) * m.dim(n + i));
      }
      o.require(lhs == rhs, "Euler identity");
      ++cases;
    }
  }
  o.detail = o.ok ? std::to_string(cases) + " Euler cases" : o.detail;
  return o;
}

Outcome ac8() {
  Outcome o;
  const IdealizerRing& t = instance();
  const Field& f = t.field();
  struct Case {
    const char* name;
    GradedIdeal j;
    long total;
    int at;
  };
  const std::vector<Case> cases{
      {"phi^5(I)", t.ideal().transformed(t.ring().phi_power(5)), 1, 5},
      {"(1:5:7)", GradedIdeal::point(ProjPoint(Vec{Scalar(1), Scalar(5), Scalar(7)}), f), 0, -1},
      {"U+", GradedIdeal::irrelevant(2, f), 1, 0}};
  for (const auto& c : cases) {
    std::vector<std::size_t> dims;
    long total = 0;
    for (int n = 0; n <= kWindow; ++n) {
      dims.push_back(hom_S_quotient(t, c.j, n));
      total += static_cast<long>(dims.back());
    }
    o.require(same(total, c.total), std::string(c.name) + " total");
    if (c.at >= 0) o.require(dims[c.at] == 1, std::string(c.name) + " not at n=" + std::to_string(c.at));
    std::size_t tz = 0;
    for (auto it = dims.rbegin(); it != dims.rend() && *it == 0; ++it) ++tz;
    o.require(tz >= static_cast<std::size_t>(kTrailing), std::string(c.name) + " trailing zeros");
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  const IdealizerRing& t = instance();
  const ProbeRecord a = right_noeth_probe(t, parse_poly("x0 - 2*x1 + x2", 2), kWindow);
  o.require(a.support == std::vector<int>{1, 2} && a.coker_total == 2, "x0 - 2x1 + x2");
  const ProbeRecord b = right_noeth_probe(t, parse_poly("x0 - x1", 2), kWindow);
  o.require(b.coker_total == 1, "x0 - x1");
  std::vector<HomogPoly> probes{parse_poly("x0 - 2*x1 + x2", 2), parse_poly("x0 - x1", 2)};
  for (const auto& g : t.I_piece(1).basis_polys()) probes.push_back(g);
  for (const auto& g : t.I_piece(2).basis_polys()) probes.push_back(g);
  for (const auto& f : probes) {
    const ProbeRecord r = right_noeth_probe(t, f, kWindow);
    o.require(r.consistent, "support != orbit zero set for " + r.f);
  }
  return o;
}

Outcome ac10() {
  Outcome o;
  for (int d : {2, 3}) o.require(local_witness_check(d).passed, "local witness d=" + std::to_string(d));
  const SegreLab lab(instance());
  const WitnessReport rep = lab.witness_dims(kSegreMax);
  std::string dims;
  for (int m = 2; m <= kSegreMax; ++m) {
    o.require(rep.degrees[m].witness_dim >= 1, "witness vanishes at m=" + std::to_string(m));
    dims += (dims.empty() ? "" : ",") + std::to_string(rep.degrees[m].witness_dim);
  }
  o.require(rep.degrees[1].j_dim == 3, "dim J_1 != 3");
  if (o.ok) o.detail = "witness dims m=2..6: " + dims;
  return o;
}

Outcome ac11() {
  Outcome o;
  const OppositeCheck chk = instance().ring().opposite_iso_check(kOppositeMax);
  o.require(chk.passed, "opposite isomorphism fails");
  if (o.ok) o.detail = std::to_string(chk.pairs_checked) + " pairs";
  return o;
}

Outcome ac12() {
  Outcome o;
  const VeroneseComparison v = instance().veronese_idealizer_compare(kVeroneseN, kVeroneseMax);
  o.require(v.first_agreement.has_value(), "no agreement range");
  if (v.first_agreement) {
    for (int m = *v.first_agreement; m <= kVeroneseMax; ++m) {
      o.require(same(static_cast<long>(v.t_dims[m]), static_cast<long>(v.r_dims[m])), "m=" + std::to_string(m));
    }
    if (o.ok) o.detail = "D = " + std::to_string(*v.first_agreement);
  }
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome ac13(const std::string& cli, const std::string& scratch) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "CLI path not given");
    return o;
  }
  for (const char* fmt : {"json", "csv"}) {
    const std::string tag = scratch + "/determinism_" + std::to_string(::getpid());
    const std::string a = tag + "_a." + fmt, b = tag + "_b." + fmt;
    const std::string base = "\"" + cli + "\" verify-suite --format " + fmt + " --out ";
    const int ra = std::system((base + "\"" + a + "\"").c_str());
    const int rb = std::system((base + "\"" + b + "\"").c_str());
    o.require(ra == 0 && rb == 0, std::string(fmt) + " run failed");
    const std::string sa = slurp(a), sb = slurp(b);
    o.require(!sa.empty() && sa == sb, std::string(fmt) + " outputs differ");
    std::remove(a.c_str());
    std::remove(b.c_str());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string scratch = argc > 2 ? argv[2] : ".";
  const int only = argc > 3 ? std::atoi(argv[3]) : 0;  // 0 runs every criterion
  struct Criterion {
    int id;
    const char* title;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "idealizer structure T_n = I_n, dim = C(n+2,2) - 1", kBudgetSeconds, ac1},
      {2, "twist law x1*x0 = 2 x0*x1 and associativity", kBudgetSeconds, ac2},
      {3, "Veronese not generated in degree 1", kBudgetSeconds, ac3},
      {4, "S/IS vanishes from m0, identity control constant 1", kBudgetSeconds, ac4},
      {5, "dim (S/T)_n = 1 for 1 <= n <= 10", kBudgetSeconds, ac5},
      {6, "multiplicative independence certificate", kBudgetSeconds, ac6},
      {7, "Koszul Ext witnesses and Euler identity", kBudgetSeconds, ac7},
      {8, "left noetherian Hom totals", kBudgetSeconds, ac8},
      {9, "right noetherian probes", kBudgetSeconds, ac9},
      {10, "Segre witness", kSegreBudgetSeconds, ac10},
      {11, "opposite ring identity", kBudgetSeconds, ac11},
      {12, "Veronese idealizer agreement", kBudgetSeconds, ac12},
      {13, "verify-suite determinism", kBudgetSeconds, [&] { return ac13(cli, scratch); }},
  };
  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) o.require(false, "over the time budget");
    failed += !o.ok;
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << "  AC" << c.id << "  " << c.title;
    if (!o.detail.empty()) line << "  [" << o.detail << "]";
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "  (" << secs << " s)";
    std::cout << line.str() << std::endl;
  }
  if (ran == 0) {
    std::cout << "no criterion numbered " << only << std::endl;
    return 2;
  }
  if (only == 0) {
    std::cout << (failed == 0 ? "all 13 criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
