#include "twistlab/commands.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "twistlab/ext.hpp"
#include "twistlab/orbit.hpp"
#include "twistlab/segre.hpp"

namespace twl {

using nlohmann::ordered_json;

Format parse_format(const std::string& text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  throw ConfigError("format '" + text + "': expected csv or json");
}

std::string to_string(OrbitMode m) {
  switch (m) {
    case OrbitMode::kGeneric: return "generic";
    case OrbitMode::kDegenerate: return "degenerate";
    case OrbitMode::kCoincident: return "coincident";
  }
  return "unknown";
}

namespace {

OrbitMode classify(const AutoMap& phi, const ProjPoint& c, int radius) {
  const OrbitWindow w = orbit_points(phi, c, radius);
  if (distinct_window(w)) return OrbitMode::kGeneric;
  for (const auto& p : w.points) {
    if (!(p == c)) return OrbitMode::kCoincident;
  }
  return OrbitMode::kDegenerate;
}

ordered_json opt(const std::optional<int>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::size_t trailing_zeros(const std::vector<std::size_t>& v) {
  std::size_t k = 0;
  for (auto it = v.rbegin(); it != v.rend() && *it == 0; ++it) ++k;
  return k;
}

std::string primes_note(const Instance& in) {
  return in.field.is_prime() ? " (prime field: heuristic)" : "";
}

HomogPoly random_form(std::mt19937_64& rng, int d, int degree, const Field& field) {
  std::vector<HomogPoly::Term> terms;
  for (const auto& m : monomial_basis(d, degree)) {
    if (rng() % 2 == 0) continue;
    const long c = static_cast<long>(rng() % 11) - 5;
    if (c != 0) terms.push_back({m, field.from_int(c)});
  }
  return HomogPoly::from_terms(d, degree, std::move(terms));
}

ProjPoint off_orbit_point(int d, const Field& f) {
  Vec coords;
  for (const auto& q : off_orbit_coordinates(d)) coords.push_back(f.from_rational(q));
  return ProjPoint(std::move(coords));
}

// phi^5(I) is the reference shift; small windows pull it in so that the
// trailing zeros after it still fit.
int shift_inside_window(int n_max, int trailing) {
  return n_max >= 5 + trailing ? 5 : std::max(0, n_max - trailing);
}

std::vector<std::size_t> binomial_minus_one(int d, int n_max) {
  std::vector<std::size_t> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(basis_size(d, n) - 1);
  return out;
}

}  // namespace

std::vector<mpq_class> off_orbit_coordinates(int d) {
  static const long kCoords[] = {1, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
  if (d + 1 > static_cast<int>(std::size(kCoords))) throw ConfigError("d too large for the test point");
  return {std::begin(kCoords), std::begin(kCoords) + d + 1};
}

Instance::Instance(const RingConfig& c, std::optional<Field> f)
    : config(c),
      field(f.value_or(c.field)),
      t(TwistRing(make_automap(c, field), c.max_degree), make_point(c, field)),
      mode(classify(t.ring().phi(), t.point(), c.max_degree)) {}

// ---- verify-suite checks ----------------------------------------------------

namespace {

struct SuiteContext {
  explicit SuiteContext(const Instance& i) : in(i) {}
  const Instance& in;
  bool density_ok = true;        // certificate did not rule critical density out
  std::string density_reason;    // why density-dependent checks were skipped
};

CheckRecord skipped(const std::string& name, const std::string& anchor, const std::string& why) {
  CheckRecord r;
  r.name = name;
  r.anchor = anchor;
  r.status = Status::kSkipped;
  r.note = why;
  return r;
}

CheckRecord check_idealizer_structure(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  const int n_max = in.config.max_degree;
  CheckRecord r;
  r.name = "idealizer-structure";
  r.anchor = "T = k + I";
  r.data["mode"] = to_string(in.mode);
  r.data["window"] = n_max;
  std::vector<std::size_t> dims;
  for (int n = 1; n <= n_max; ++n) dims.push_back(in.t.T_piece(n).dim());
  r.data["dims"] = dims;
  if (in.mode == OrbitMode::kCoincident) {
    r.status = Status::kSkipped;
    r.note = "orbit points repeat inside the window";
    return r;
  }
  if (in.mode == OrbitMode::kDegenerate) {
    bool all = true;
    for (int n = 0; n <= n_max; ++n) all = all && in.t.T_piece(n).codim() == 0;
    r.data["TEqualsS"] = all;
    r.status = all ? Status::kPass : Status::kFail;
    r.note = "phi fixes c, so every ideal is two-sided and T = S";
    return r;
  }
  const IdealizerCheck chk = in.t.check_T_equals_k_plus_I(n_max);
  const auto expected = binomial_minus_one(in.t.d(), n_max);
  bool reduction_ok = true;
  const int low = std::min(n_max, 4);
  for (int n = 1; n <= low; ++n) {
    reduction_ok = reduction_ok && in.t.idealizer_piece_unreduced(n, n + 1) == in.t.T_piece(n);
  }
  r.data["expected"] = expected;
  r.data["orbitDistinct"] = chk.orbit_distinct;
  r.data["firstFailure"] = opt(chk.first_failure);
  r.data["reductionCheckedThrough"] = low;
  r.data["reductionAgrees"] = reduction_ok;
  r.data["T0"] = in.t.T_piece(0).dim();
  const bool ok = chk.passed && dims == expected && reduction_ok && in.t.T_piece(0).dim() == 1;
  r.status = ok ? Status::kPass : Status::kFail;
  return r;
}

CheckRecord check_twist_law(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  const TwistRing& s = in.ring();
  const int d = s.d();
  const Field& f = in.field;
  CheckRecord r;
  r.name = "twist-law";
  r.anchor = "fg = phi^n(f) o g";
  const TwistedElement x0{HomogPoly::variable(d, 0) * f.one()};
  const TwistedElement x1{HomogPoly::variable(d, 1) * f.one()};
  const HomogPoly x1x0 = s.mul(x1, x0).value;
  const HomogPoly x0x1 = s.mul(x0, x1).value;
  // by the rule x1 * x0 = phi(x1) o x0
  bool law = x1x0 == poly_mul(s.phi().apply(x1.value), x0.value);
  if (s.phi().is_diagonal()) {
    const Scalar p1 = s.phi().matrix()[1][1] / s.phi().matrix()[0][0];
    law = law && x1x0 == x0x1 * p1;
    r.data["p1"] = p1.to_string();
  }
  r.data["x1*x0"] = x1x0.to_string();
  r.data["x0*x1"] = x0x1.to_string();
  r.data["noncommutative"] = !(x1x0 == x0x1);

  std::mt19937_64 rng(in.config.seed);
  int failures = 0;
  const int triples = 200;
  for (int k = 0; k < triples; ++k) {
    const TwistedElement a{random_form(rng, d, static_cast<int>(rng() % 4), f)};
    const TwistedElement b{random_form(rng, d, static_cast<int>(rng() % 4), f)};
    const TwistedElement c{random_form(rng, d, static_cast<int>(rng() % 4), f)};
    if (!(s.mul(s.mul(a, b), c).value == s.mul(a, s.mul(b, c)).value)) ++failures;
  }
  r.data["associativityTriples"] = triples;
  r.data["associativityFailures"] = failures;
  r.data["seed"] = in.config.seed;
  r.status = law && failures == 0 ? Status::kPass : Status::kFail;
  return r;
}

CheckRecord check_veronese_generation(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "veronese-generation";
  r.anchor = "T^(n) is not generated in degree 1";
  if (in.mode == OrbitMode::kCoincident) return skipped(r.name, r.anchor, "orbit points repeat inside the window");
  const int d = in.t.d();
  ordered_json rows = ordered_json::array();
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    const bool gen = in.t.veronese_gen_in_degree_one(n);
    rows.push_back({{"n", n},
                    {"genInDegreeOne", gen},
                    {"dimProduct", in.t.T_product(n, n).dim()},
                    {"dimT2n", in.t.T_piece(2 * n).dim()}});
    if (in.mode == OrbitMode::kGeneric) ok = ok && !gen;
    if (in.mode == OrbitMode::kDegenerate && n == 1) ok = ok && gen;
  }
  r.data["mode"] = to_string(in.mode);
  r.data["degrees"] = rows;
  if (in.mode == OrbitMode::kGeneric) {
    const std::size_t t1 = in.t.T_piece(1).dim();
    const std::size_t bound = t1 * t1;
    const std::size_t prod = in.t.T_product(1, 1).dim();
    const std::size_t t2 = in.t.T_piece(2).dim();
    // dim T1^2 bounds the product; it only decides the question when below dim T2
    r.data["degreeOneBound"] = {{"dimT1T1", prod}, {"bound", bound}, {"dimT2", t2}, {"decisive", bound < t2}};
    ok = ok && prod <= bound && prod < t2;
    if (d == 2) ok = ok && bound < t2;
  }
  r.status = ok ? Status::kPass : Status::kFail;
  return r;
}

CheckRecord check_s_mod_is(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "s-mod-is";
  r.anchor = "dim_k S/IS < infinity";
  if (!ctx.density_ok) return skipped(r.name, r.anchor, ctx.density_reason);
  const int n_max = in.config.max_degree;
  const WindowSeries s = in.t.s_mod_is_dims(n_max, in.config.trailing);
  // control: the identity twist, where IS = I
  const IdealizerRing control(TwistRing(AutoMap::identity(in.t.d(), in.field), n_max), in.t.point());
  const WindowSeries ctl = control.s_mod_is_dims(n_max, in.config.trailing);
  const bool control_ok =
      std::all_of(ctl.values.begin(), ctl.values.end(), [](std::size_t v) { return v == 1; });
  r.data["window"] = n_max;
  r.data["trailingZeros"] = in.config.trailing;
  r.data["dims"] = s.values;
  r.data["m0"] = opt(s.stable_from);
  r.data["identityControlDims"] = ctl.values;
  const bool ok = s.stable_from.has_value() && control_ok;
  r.status = ok ? Status::kObserved : Status::kFail;
  r.note = "zero from m0 observed up to N with the trailing-zero count recorded" + primes_note(in);
  return r;
}

CheckRecord check_s_mod_t(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "s-mod-t";
  r.anchor = "dim_k (S/T)_n = 1 for all n >= 1";
  if (in.mode == OrbitMode::kCoincident) return skipped(r.name, r.anchor, "orbit points repeat inside the window");
  const auto dims = in.t.s_mod_t_dims(in.config.max_degree);
  r.data["mode"] = to_string(in.mode);
  r.data["dims"] = dims;
  bool ok = dims[0] == 0;
  for (std::size_t n = 1; n < dims.size(); ++n) {
    ok = ok && dims[n] == (in.mode == OrbitMode::kGeneric ? 1u : 0u);
  }
  r.status = ok ? Status::kPass : Status::kFail;
  return r;
}

CheckRecord check_critdense_certificate(SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "critdense-certificate";
  r.anchor = "p_1..p_d generate a subgroup isomorphic to Z^d";
  const auto mult = diagonal_multipliers(in.config);
  if (mult.empty()) {
    ctx.density_ok = true;
    return skipped(r.name, r.anchor, "automorphism is not diagonal; no certificate applies");
  }
  const IndependenceCertificate cert = multiplicative_independence(mult, in.config.prime_bound);
  ordered_json ps = ordered_json::array();
  for (const auto& q : mult) ps.push_back(q.get_str());
  r.data["multipliers"] = ps;
  r.data["verdict"] = cert.independent ? "independent" : "dependent";
  r.data["relation"] = cert.relation;
  r.data["relationVerified"] = cert.independent || verify_relation(mult, cert.relation);
  r.data["primes"] = cert.primes;
  r.data["exponents"] = cert.exponents;
  bool zero_coord = false;
  for (const auto& x : in.config.point) zero_coord = zero_coord || x == 0;
  r.data["pointHasZeroCoordinate"] = zero_coord;
  r.status = (cert.independent || verify_relation(mult, cert.relation)) ? Status::kPass : Status::kFail;
  if (!cert.independent) {
    ctx.density_ok = false;
    ctx.density_reason = "multipliers are multiplicatively dependent; critical density not certified";
  } else if (zero_coord) {
    ctx.density_ok = false;
    ctx.density_reason = "c lies on a coordinate hyperplane fixed by phi; orbit is not dense";
  }
  r.note = "certified by the exact criterion";
  return r;
}

CheckRecord check_critdense_ranks(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "critdense-ranks";
  r.anchor = "orbit points impose independent conditions on forms";
  const int w = in.config.density_window;
  const OrbitWindow orbit = orbit_points(in.ring().phi(), in.t.point(), w);
  ordered_json rows = ordered_json::array();
  ordered_json deficient = ordered_json::array();
  for (int m = 1; m <= in.config.density_degree; ++m) {
    const int k = static_cast<int>(std::min<std::size_t>(basis_size(in.t.d(), m), 2 * w + 1));
    std::vector<int> idx;
    for (int i = 0; i < k; ++i) idx.push_back(i - (k - 1) / 2);
    const std::size_t rank = general_position_rank(in.field, orbit, m, idx);
    rows.push_back({{"m", m}, {"first", idx.front()}, {"last", idx.back()}, {"points", k}, {"rank", rank}});
    if (rank < static_cast<std::size_t>(k)) deficient.push_back({{"m", m}, {"rank", rank}, {"points", k}});
  }
  r.data["window"] = w;
  r.data["ranks"] = rows;
  r.data["counterexamples"] = deficient;
  r.status = Status::kObserved;
  r.note = "finite rank evidence, not a certificate" + primes_note(in);
  return r;
}

CheckRecord check_koszul_ext(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "koszul-ext";
  r.anchor = "Ext^d(U/I, U) = (U/I)[d]";
  const int d = in.t.d();
  const int n_max = in.config.max_degree;
  const KoszulComplex k(in.field, in.t.I_piece(1).basis_polys());
  const GradedModule u = GradedModule::free(d, in.field);
  bool ok = true;
  std::vector<std::size_t> top;
  int low_nonzero = 0;
  for (int n = -n_max; n <= n_max; ++n) {
    for (int i = 0; i < d; ++i) low_nonzero += ext_U(k, i, u, n) != 0;
    const std::size_t e = ext_U(k, d, u, n);
    top.push_back(e);
    ok = ok && e == (n >= -d ? 1u : 0u);
  }
  ok = ok && low_nonzero == 0;
  std::vector<std::size_t> twisted_top;
  std::vector<std::size_t> twisted_zero;
  const GradedIdeal zero = GradedIdeal::zero(d, in.field);
  for (int n = 0; n <= n_max; ++n) {
    twisted_top.push_back(ext_S_twisted(in.t, d, zero, n));
    twisted_zero.push_back(ext_S_twisted(in.t, 0, zero, n));
    ok = ok && twisted_top.back() == 1 && twisted_zero.back() == 0;
  }
  // Euler characteristic on a spread of modules
  std::vector<std::pair<std::string, GradedModule>> modules{
      {"U", u},
      {"U/I", GradedModule::quotient(in.t.ideal())},
      {"U/phi^5(I)", GradedModule::quotient(in.t.ideal().transformed(in.ring().phi_power(5)))},
      {"U/(x0)", GradedModule::quotient(GradedIdeal(d, in.field, {HomogPoly::variable(d, 0) * in.field.one()}))},
      {"U(1) + U/I(-1)", GradedModule::free(d, in.field, 1).direct_sum(GradedModule::quotient(in.t.ideal(), -1))},
  };
  int euler_cases = 0;
  int euler_failures = 0;
  for (const auto& [name, m] : modules) {
    for (int n = -n_max; n <= n_max; ++n) {
      long lhs = 0;
      long rhs = 0;
      for (int i = 0; i <= d; ++i) {
        const long sign = i % 2 == 0 ? 1 : -1;
        lhs += sign * static_cast<long>(ext_U(k, i, m, n));
        rhs += sign * binomial(d, i) * static_cast<long>(m.dim(n + i));
      }
      ++euler_cases;
      euler_failures += lhs != rhs;
    }
  }
  ok = ok && euler_failures == 0;
  r.data["window"] = n_max;
  r.data["extTopU"] = top;
  r.data["extLowerNonzeroCells"] = low_nonzero;
  r.data["extTopTwistedZeroIdeal"] = twisted_top;
  r.data["extZeroTwistedZeroIdeal"] = twisted_zero;
  r.data["eulerCases"] = euler_cases;
  r.data["eulerFailures"] = euler_failures;
  r.status = ok ? Status::kPass : Status::kFail;
  r.note = "S fails chi_d on the left: Ext^d_S(S/I, S)_n = 1 for every n in the window";
  return r;
}

CheckRecord check_chi_sample(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "chi-sample";
  r.anchor = "dim_k Ext^j_S(S/I, M) < infinity for j <= i";
  if (!ctx.density_ok) return skipped(r.name, r.anchor, ctx.density_reason);
  const int d = in.t.d();
  const int n_max = in.config.max_degree;
  const Field& f = in.field;
  const int k = shift_inside_window(n_max, in.config.trailing);
  std::vector<GradedIdeal> family{
      GradedIdeal::zero(d, f),
      in.t.ideal().transformed(in.ring().phi_power(k)),
      GradedIdeal::point(off_orbit_point(d, f), f),
      GradedIdeal(d, f, {HomogPoly::variable(d, 0) * f.one()}),
  };
  const std::vector<std::string> names{"0", "phi^" + std::to_string(k) + "(I)", "off-orbit point", "(x0)"};
  const auto tables = chi_sample_report(in.t, family, n_max, in.config.trailing);
  ordered_json out = ordered_json::array();
  bool ok = true;
  for (std::size_t q = 0; q < tables.size(); ++q) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : tables[q].rows) {
      rows.push_back({{"j", row.j}, {"values", row.values}, {"total", row.total}, {"stabilized", row.stabilized}});
      if (row.j < d) ok = ok && row.stabilized;
    }
    if (q == 0) ok = ok && !tables[0].rows[d].stabilized && tables[0].rows[0].total == 0;
    out.push_back({{"J", names[q]}, {"ideal", tables[q].ideal}, {"rows", rows}});
  }
  r.data["window"] = n_max;
  r.data["nRange"] = {-n_max, n_max};
  r.data["trailingZeros"] = in.config.trailing;
  r.data["tables"] = out;
  r.status = ok ? Status::kObserved : Status::kFail;
  r.note = "consistent with chi_{d-1}; row j = d for J = 0 never stabilizes" + primes_note(in);
  return r;
}

CheckRecord check_left_noeth(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "left-noeth-hom";
  r.anchor = "Hom_S(S/I, S/J)_n = {x in U_n : phi^n(I) o x in J} / J_n";
  if (!ctx.density_ok) return skipped(r.name, r.anchor, ctx.density_reason);
  const int d = in.t.d();
  const int n_max = in.config.max_degree;
  const int t = in.config.trailing;
  const int k = shift_inside_window(n_max, t);
  struct Case {
    std::string name;
    GradedIdeal j;
    std::optional<int> expected;
  };
  const Field& f = in.field;
  std::vector<Case> cases{
      {"phi^" + std::to_string(k) + "(I)", in.t.ideal().transformed(in.ring().phi_power(k)), k},
      {"off-orbit point",
       GradedIdeal::point(off_orbit_point(d, f), f),
       std::nullopt},
      {"U+", GradedIdeal::irrelevant(d, f), 0},
  };
  ordered_json out = ordered_json::array();
  bool ok = true;
  for (const auto& c : cases) {
    std::vector<std::size_t> dims;
    bool agrees_with_ext0 = true;
    for (int n = 0; n <= n_max; ++n) {
      dims.push_back(hom_S_quotient(in.t, c.j, n));
      agrees_with_ext0 = agrees_with_ext0 && dims.back() == ext_S_twisted(in.t, 0, c.j, n);
    }
    std::size_t total = 0;
    for (auto v : dims) total += v;
    bool matches = true;
    for (int n = 0; n <= n_max; ++n) {
      matches = matches && dims[n] == (c.expected && *c.expected == n ? 1u : 0u);
    }
    const bool finite = trailing_zeros(dims) >= static_cast<std::size_t>(t);
    ok = ok && matches && finite && agrees_with_ext0;
    out.push_back({{"J", c.name},
                   {"ideal", c.j.describe()},
                   {"dims", dims},
                   {"total", total},
                   {"expectedAt", opt(c.expected)},
                   {"trailingZeroCount", trailing_zeros(dims)},
                   {"agreesWithExt0", agrees_with_ext0}});
  }
  r.data["window"] = n_max;
  r.data["trailingZeros"] = t;
  r.data["cases"] = out;
  r.status = ok ? Status::kObserved : Status::kFail;
  r.note = "finite totals observed up to N" + primes_note(in);
  return r;
}

ordered_json probe_json(const ProbeRecord& p) {
  ordered_json degs = ordered_json::array();
  for (const auto& g : p.degrees) {
    degs.push_back({{"m", g.m},
                    {"cokerDim", g.coker_dim},
                    {"torDim", g.tor_dim},
                    {"vanishesAtOrbit", g.vanishes_at_orbit}});
  }
  ordered_json j;
  j["f"] = p.f;
  j["degree"] = p.degree;
  j["maxDegree"] = p.max_degree;
  j["degrees"] = degs;
  j["support"] = p.support;
  j["predictedSupport"] = p.predicted_support;
  j["totals"] = {{"coker", p.coker_total}, {"tor", p.tor_total}};
  j["consistent"] = p.consistent;
  return j;
}

CheckRecord check_right_noeth(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "right-noeth-probes";
  r.anchor = "(fS + T)_m = phi^{m-n}(f) o U_{m-n} + I_m";
  if (!ctx.density_ok) return skipped(r.name, r.anchor, ctx.density_reason);
  const int n_max = in.config.max_degree;
  ordered_json out = ordered_json::array();
  ordered_json rejected = ordered_json::array();
  bool ok = true;
  std::vector<HomogPoly> probes;
  for (const auto& text : in.config.probes) {
    const HomogPoly f = parse_poly(text, in.t.d()) * in.field.one();
    if (f.is_zero() || !in.t.T_piece(f.degree()).contains(f.to_dense())) {
      rejected.push_back(text);
      continue;
    }
    probes.push_back(f);
  }
  // the echelon basis of I_1 always probes
  for (const auto& g : in.t.I_piece(1).basis_polys()) probes.push_back(g);
  for (const auto& f : probes) {
    const ProbeRecord p = right_noeth_probe(in.t, f, n_max);
    std::vector<std::size_t> coker;
    for (const auto& g : p.degrees) coker.push_back(g.coker_dim);
    ok = ok && p.consistent && trailing_zeros(coker) >= static_cast<std::size_t>(in.config.trailing);
    out.push_back(probe_json(p));
  }
  r.data["window"] = n_max;
  r.data["trailingZeros"] = in.config.trailing;
  r.data["probes"] = out;
  r.data["notInIdealizer"] = rejected;
  r.status = ok ? Status::kObserved : Status::kFail;
  r.note = "support equals {m : f(c_{n-m}) = 0} in every degree of the window" + primes_note(in);
  return r;
}

CheckRecord check_segre_local(const SuiteContext& ctx) {
  CheckRecord r;
  r.name = "segre-local-witness";
  r.anchor = "w = u_1 v_2 - u_2 v_1 lies in J' and K' but not in J'K'";
  std::vector<int> ds{2, 3};
  if (ctx.in.t.d() > 3) ds.push_back(ctx.in.t.d());
  ordered_json out = ordered_json::array();
  bool ok = true;
  for (int d : ds) {
    const LocalWitness w = local_witness_check(d);
    ok = ok && w.passed;
    out.push_back({{"d", d},
                   {"w", w.w},
                   {"wInJExplicit", w.w_in_J_explicit},
                   {"wInJLinear", w.w_in_J_linear},
                   {"wInK", w.w_in_K},
                   {"productsDegreeThree", w.products_degree_three},
                   {"wNonzeroDegreeTwo", w.w_nonzero_degree_two},
                   {"controlRejected", w.control_rejected},
                   {"passed", w.passed}});
  }
  r.data["cases"] = out;
  r.status = ok ? Status::kPass : Status::kFail;
  return r;
}

ordered_json witness_json(const WitnessReport& rep) {
  ordered_json rows = ordered_json::array();
  for (const auto& w : rep.degrees) {
    rows.push_back({{"m", w.m},
                    {"dimJ", w.j_dim},
                    {"dimK", w.k_dim},
                    {"dimJcapK", w.cap_dim},
                    {"dimJK", w.jk_dim},
                    {"witness", w.witness_dim},
                    {"jkInsideCap", w.jk_inside_cap}});
  }
  return rows;
}

CheckRecord check_segre_witness(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "segre-witness-dims";
  r.anchor = "(J cap K)/(J o K) is not a torsion module";
  if (!ctx.density_ok) return skipped(r.name, r.anchor, ctx.density_reason);
  const int m_max = in.config.segre_max_degree;
  const int d = in.t.d();
  const SegreLab lab(in.t);
  const WitnessReport rep = lab.witness_dims(m_max);
  bool invariants = true;
  for (const auto& w : rep.degrees) {
    const std::size_t um = basis_size(d, w.m);
    const std::size_t u2m = basis_size(d, 2 * w.m);
    invariants = invariants && w.j_dim + u2m == um * um && w.jk_inside_cap;
    if (w.m >= 1) invariants = invariants && w.cap_dim + u2m == (um - 1) * (um - 1) + d + 1;
    invariants = invariants && lab.diagonal_invariant(w.m);
  }
  bool positive = true;
  for (int m = 2; m <= m_max; ++m) positive = positive && rep.degrees[m].witness_dim >= 1;
  r.data["maxDegree"] = m_max;
  r.data["degrees"] = witness_json(rep);
  r.data["nonvanishingFrom"] = opt(rep.nonvanishing_from);
  r.data["invariantsHold"] = invariants;
  r.data["dimJ1"] = m_max >= 1 ? rep.degrees[1].j_dim : 0;
  r.status = invariants && positive ? Status::kObserved : Status::kFail;
  r.note = "nonzero in every checked degree m >= 2; no growth law asserted" + primes_note(in);
  return r;
}

CheckRecord check_opposite(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "opposite-ring";
  r.anchor = "S^op is the left Zhang twist of U by phi^{-1}";
  const OppositeCheck chk = in.ring().opposite_iso_check(in.config.opposite_max_degree);
  r.data["maxDegree"] = chk.max_degree;
  r.data["pairsChecked"] = chk.pairs_checked;
  r.data["firstFailure"] =
      chk.first_failure
          ? ordered_json({chk.first_failure->first.to_string(), chk.first_failure->second.to_string()})
          : ordered_json(nullptr);
  r.status = chk.passed ? Status::kPass : Status::kFail;
  return r;
}

ordered_json veronese_json(const VeroneseComparison& v) {
  ordered_json j;
  j["n"] = v.n;
  j["maxDegree"] = v.max_degree;
  j["jCap"] = v.j_cap;
  j["tDims"] = v.t_dims;
  j["rDims"] = v.r_dims;
  j["agree"] = v.agree;
  j["firstAgreement"] = opt(v.first_agreement);
  return j;
}

CheckRecord check_veronese_idealizer(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "veronese-idealizer";
  r.anchor = "T' and R' are isomorphic in large degree";
  if (!ctx.density_ok) return skipped(r.name, r.anchor, ctx.density_reason);
  const VeroneseComparison v = in.t.veronese_idealizer_compare(
      in.config.veronese_n, in.config.veronese_max_degree, in.config.veronese_j_cap);
  r.data = veronese_json(v);
  r.status = v.first_agreement ? Status::kObserved : Status::kFail;
  r.note = "agreement observed from D through N with constraints capped at j <= jCap" + primes_note(in);
  return r;
}

// In prime mode every dimension series is recomputed over a second prime.
CheckRecord check_prime_crosscheck(const SuiteContext& ctx) {
  const Instance& in = ctx.in;
  CheckRecord r;
  r.name = "prime-crosscheck";
  r.anchor = "dimensions agree over two primes";
  std::uint32_t q = 0x7fffffffu;
  while (!is_prime_u32(q) || q == in.field.modulus()) q -= 2;
  const Instance other(in.config, Field::prime(q));
  const int n_max = in.config.max_degree;
  const auto dims = [&](const Instance& x) {
    std::vector<std::size_t> out;
    for (int n = 0; n <= n_max; ++n) out.push_back(x.t.T_piece(n).dim());
    for (auto v : x.t.s_mod_is_dims(n_max).values) out.push_back(v);
    return out;
  };
  const auto a = dims(in);
  const auto b = dims(other);
  r.data["primary"] = in.field.name();
  r.data["secondary"] = other.field.name();
  r.data["agree"] = a == b;
  r.status = a == b ? Status::kPass : Status::kFail;
  r.note = "heuristic: agreement over two primes is evidence, not proof, of the rational answer";
  return r;
}

}  // namespace

Report run_verify_suite(const RingConfig& config) {
  using Clock = std::chrono::steady_clock;
  validate(config);
  const Instance in(config);
  Report report("verify-suite", config_to_json(config), in.field.is_prime());
  SuiteContext ctx(in);
  const auto timed = [&](const std::function<CheckRecord()>& fn) {
    const auto t0 = Clock::now();
    CheckRecord rec = fn();
    rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report.add(std::move(rec));
  };
  // the certificate decides which checks need critical density, so it runs first
  CheckRecord cert;
  {
    const auto t0 = Clock::now();
    cert = check_critdense_certificate(ctx);
    cert.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  }
  timed([&] { return check_idealizer_structure(ctx); });
  timed([&] { return check_twist_law(ctx); });
  timed([&] { return check_veronese_generation(ctx); });
  timed([&] { return check_s_mod_is(ctx); });
  timed([&] { return check_s_mod_t(ctx); });
  report.add(std::move(cert));
  timed([&] { return check_critdense_ranks(ctx); });
  timed([&] { return check_koszul_ext(ctx); });
  timed([&] { return check_chi_sample(ctx); });
  timed([&] { return check_left_noeth(ctx); });
  timed([&] { return check_right_noeth(ctx); });
  timed([&] { return check_segre_local(ctx); });
  timed([&] { return check_segre_witness(ctx); });
  timed([&] { return check_opposite(ctx); });
  timed([&] { return check_veronese_idealizer(ctx); });
  if (in.field.is_prime()) timed([&] { return check_prime_crosscheck(ctx); });
  return report;
}

// ---- commands ---------------------------------------------------------------

namespace {

CommandOutput emit_json(const std::string& command, const Instance& in, ordered_json result) {
  return {dump(envelope(command, config_to_json(in.config), in.field.is_prime(), std::move(result))), 0, {}};
}

std::string csv_head(const std::string& command, const Instance& in) {
  return csv_preamble(command, config_to_json(in.config), in.field.is_prime());
}

}  // namespace

CommandOutput cmd_verify_suite(const RingConfig& config, Format format) {
  const Report report = run_verify_suite(config);
  CommandOutput out;
  out.text = format == Format::kJson ? dump(report.to_json()) : report.to_csv();
  out.exit_code = report.exit_code();
  for (const auto& c : report.checks()) out.timings.emplace_back(c.name, c.seconds);
  return out;
}

CommandOutput cmd_hilbert(const RingConfig& config, const std::string& series, Format format) {
  static const std::vector<std::string> kSeries{"S", "T", "S_mod_IS", "S_mod_T"};
  if (std::find(kSeries.begin(), kSeries.end(), series) == kSeries.end()) {
    throw ConfigError("unknown series '" + series + "': expected S, T, S_mod_IS or S_mod_T");
  }
  validate(config);
  const Instance in(config);
  const int n_max = config.max_degree;
  std::vector<std::size_t> dims;
  if (series == "S") {
    for (int n = 0; n <= n_max; ++n) dims.push_back(in.ring().dim(n));
  } else if (series == "T") {
    for (int n = 0; n <= n_max; ++n) dims.push_back(in.t.T_piece(n).dim());
  } else if (series == "S_mod_IS") {
    dims = in.t.s_mod_is_dims(n_max, config.trailing).values;
  } else {
    dims = in.t.s_mod_t_dims(n_max);
  }
  if (format == Format::kJson) {
    return emit_json("hilbert", in, {{"series", series}, {"dims", dims}});
  }
  std::ostringstream os;
  os << csv_head("hilbert", in) << "degree,dim\n";
  for (std::size_t n = 0; n < dims.size(); ++n) os << n << ',' << dims[n] << '\n';
  return {os.str(), 0, {}};
}

CommandOutput cmd_idealizer_gens(const RingConfig& config, Format format) {
  validate(config);
  const Instance in(config);
  const WindowSeries s = in.t.algebra_generator_degrees(config.max_degree, config.trailing);
  if (format == Format::kJson) {
    return emit_json("idealizer-gens", in,
                     {{"counts", s.values},
                      {"window", s.window},
                      {"trailingZeros", s.trailing},
                      {"trailingZeroCount", s.trailing_zero_count()},
                      {"noneAfter", opt(s.stable_from)},
                      {"status", "observed"}});
  }
  std::ostringstream os;
  os << csv_head("idealizer-gens", in) << "degree,new_generators\n";
  for (std::size_t n = 0; n < s.values.size(); ++n) os << n << ',' << s.values[n] << '\n';
  return {os.str(), 0, {}};
}

CommandOutput cmd_critdense(const RingConfig& config, Format format) {
  validate(config);
  const Instance in(config);
  SuiteContext ctx(in);
  const CheckRecord cert = check_critdense_certificate(ctx);
  const CheckRecord ranks = check_critdense_ranks(ctx);
  ordered_json result;
  result["certified"] = cert.data;
  result["certifiedStatus"] = to_string(cert.status);
  if (!cert.note.empty()) result["certifiedNote"] = cert.note;
  result["observed"] = ranks.data;
  if (cert.status == Status::kSkipped) result["verdict"] = nullptr;
  else result["verdict"] = cert.data["verdict"];
  if (format == Format::kJson) return emit_json("critdense", in, result);
  std::ostringstream os;
  os << csv_head("critdense", in) << "verdict,relation\n";
  std::string rel;
  for (const auto& x : cert.data.value("relation", ordered_json::array())) {
    if (!rel.empty()) rel += ' ';
    rel += x.dump();
  }
  os << (result["verdict"].is_null() ? "n/a" : result["verdict"].get<std::string>()) << ','
     << rel << '\n';
  os << "m,points,rank\n";
  for (const auto& row : ranks.data["ranks"]) {
    os << row["m"].dump() << ',' << row["points"].dump() << ',' << row["rank"].dump() << '\n';
  }
  return {os.str(), 0, {}};
}

CommandOutput cmd_probe(const RingConfig& config, const std::string& f_text, Format format) {
  validate(config);
  const Instance in(config);
  HomogPoly f;
  try {
    f = parse_poly(f_text, in.t.d()) * in.field.one();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  ProbeRecord p;
  try {
    p = right_noeth_probe(in.t, f, config.max_degree);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (format == Format::kJson) return emit_json("probe", in, probe_json(p));
  std::ostringstream os;
  os << csv_head("probe", in) << "m,coker_dim,tor_dim,vanishes_at_orbit\n";
  for (const auto& g : p.degrees) {
    os << g.m << ',' << g.coker_dim << ',' << g.tor_dim << ',' << (g.vanishes_at_orbit ? 1 : 0) << '\n';
  }
  return {os.str(), 0, {}};
}

CommandOutput cmd_ext_table(const RingConfig& config, const std::string& ideal, Format format) {
  validate(config);
  const Instance in(config);
  const GradedIdeal j = parse_ideal_spec(ideal, in.ring(), in.t.ideal());
  const ChiTable table = ext_table(in.t, j, config.max_degree, config.trailing);
  const int n_max = config.max_degree;
  if (format == Format::kJson) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"j", r.j}, {"values", r.values}, {"total", r.total}, {"stabilized", r.stabilized}});
    }
    return emit_json("ext-table", in,
                     {{"J", ideal}, {"ideal", table.ideal}, {"nRange", {-n_max, n_max}},
                      {"trailingZeros", table.trailing}, {"rows", rows}});
  }
  std::ostringstream os;
  os << csv_head("ext-table", in) << "j";
  for (int n = -n_max; n <= n_max; ++n) os << ',' << n;
  os << ",total,stabilized\n";
  for (const auto& r : table.rows) {
    os << r.j;
    for (auto v : r.values) os << ',' << v;
    os << ',' << r.total << ',' << (r.stabilized ? 1 : 0) << '\n';
  }
  return {os.str(), 0, {}};
}

CommandOutput cmd_hom_table(const RingConfig& config, const std::string& ideal, Format format) {
  validate(config);
  const Instance in(config);
  const GradedIdeal j = parse_ideal_spec(ideal, in.ring(), in.t.ideal());
  std::vector<std::size_t> dims;
  for (int n = 0; n <= config.max_degree; ++n) dims.push_back(hom_S_quotient(in.t, j, n));
  std::size_t total = 0;
  for (auto v : dims) total += v;
  if (format == Format::kJson) {
    return emit_json("hom-table", in,
                     {{"J", ideal},
                      {"ideal", j.describe()},
                      {"dims", dims},
                      {"total", total},
                      {"trailingZeroCount", trailing_zeros(dims)},
                      {"trailingZeros", config.trailing}});
  }
  std::ostringstream os;
  os << csv_head("hom-table", in) << "n,dim\n";
  for (std::size_t n = 0; n < dims.size(); ++n) os << n << ',' << dims[n] << '\n';
  return {os.str(), 0, {}};
}

CommandOutput cmd_segre(const RingConfig& config, Format format) {
  validate(config);
  const Instance in(config);
  const SegreLab lab(in.t);
  const WitnessReport rep = lab.witness_dims(config.segre_max_degree);
  const bool local = local_witness_check(in.t.d()).passed;
  ordered_json verdict{{"local_check", local}, {"nonvanishing_from", opt(rep.nonvanishing_from)}};
  if (format == Format::kJson) {
    return emit_json("segre", in, {{"degrees", witness_json(rep)}, {"verdict", verdict}});
  }
  std::ostringstream os;
  os << csv_head("segre", in) << "m,dim_J,dim_K,dim_JcapK,dim_JK,witness\n";
  for (const auto& w : rep.degrees) {
    os << w.m << ',' << w.j_dim << ',' << w.k_dim << ',' << w.cap_dim << ',' << w.jk_dim << ','
       << w.witness_dim << '\n';
  }
  os << "# verdict: " << verdict.dump() << '\n';
  return {os.str(), local ? 0 : 1, {}};
}

CommandOutput cmd_opposite_check(const RingConfig& config, Format format) {
  validate(config);
  const Instance in(config);
  SuiteContext ctx(in);
  const CheckRecord r = check_opposite(ctx);
  const int code = r.status == Status::kPass ? 0 : 1;
  if (format == Format::kJson) {
    ordered_json result = r.data;
    result["passed"] = r.status == Status::kPass;
    CommandOutput out = emit_json("opposite-check", in, result);
    out.exit_code = code;
    return out;
  }
  std::ostringstream os;
  os << csv_head("opposite-check", in) << "max_degree,pairs_checked,passed\n"
     << r.data["maxDegree"].dump() << ',' << r.data["pairsChecked"].dump() << ','
     << (code == 0 ? 1 : 0) << '\n';
  return {os.str(), code, {}};
}

CommandOutput cmd_veronese(const RingConfig& config, Format format) {
  validate(config);
  const Instance in(config);
  const VeroneseComparison v = in.t.veronese_idealizer_compare(
      config.veronese_n, config.veronese_max_degree, config.veronese_j_cap);
  const bool gen = in.t.veronese_gen_in_degree_one(config.veronese_n);
  if (format == Format::kJson) {
    ordered_json result = veronese_json(v);
    result["genInDegreeOne"] = gen;
    return emit_json("veronese", in, result);
  }
  std::ostringstream os;
  os << csv_head("veronese", in) << "m,dim_T,dim_R,agree\n";
  for (std::size_t m = 0; m < v.agree.size(); ++m) {
    os << m << ',' << v.t_dims[m] << ',' << v.r_dims[m] << ',' << (v.agree[m] ? 1 : 0) << '\n';
  }
  return {os.str(), 0, {}};
}

}  // namespace twl
