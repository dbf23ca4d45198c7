#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "twistlab/commands.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<int> d;
  std::string p;
  std::string point;
  std::string field;
  std::optional<int> max_degree;
  std::string format = "json";
  std::string out;
  bool timings = false;
};

// Flags win over the config file, which wins over built-in defaults.
twl::RingConfig resolve(const Overrides& o) {
  twl::RingConfig c;
  if (!o.config_path.empty()) c = twl::load_config_file(o.config_path);
  if (o.d) {
    c.d = *o.d;
    // keep the default instance usable when only d changes
    if (o.p.empty() && c.diag && static_cast<int>(c.diag->size()) != c.d) {
      std::vector<mpq_class> diag;
      // distinct primes keep the multipliers independent
      static const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
      for (int i = 0; i < c.d && i < 12; ++i) diag.emplace_back(kPrimes[i]);
      c.diag = diag;
    }
    if (o.point.empty() && static_cast<int>(c.point.size()) != c.d + 1) c.point.assign(c.d + 1, 1);
    c.segre_max_degree = std::min(c.segre_max_degree, twl::segre_degree_limit(c.d));
  }
  if (!o.p.empty()) {
    c.diag = twl::parse_rational_list(o.p);
    c.matrix.reset();
    if (!o.d) c.d = static_cast<int>(c.diag->size());
    if (o.point.empty() && static_cast<int>(c.point.size()) != c.d + 1) c.point.assign(c.d + 1, 1);
  }
  if (!o.point.empty()) c.point = twl::parse_rational_list(o.point);
  if (!o.field.empty()) c.field = twl::parse_field(o.field);
  if (o.max_degree) c.max_degree = *o.max_degree;
  twl::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Idealizers in twisted polynomial rings: exact finite witnesses"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "JSON config file");
  app.add_option("--d", o.d, "projective dimension d >= 2");
  app.add_option("--p", o.p, "diagonal multipliers p1,...,pd");
  app.add_option("--point", o.point, "coordinates of c, e.g. 1,1,1");
  app.add_option("--field", o.field, "rational or prime:<p>");
  app.add_option("--max-degree", o.max_degree, "window N");
  app.add_option("--format", o.format, "csv or json");
  app.add_option("--out", o.out, "write the report here instead of stdout");
  app.add_flag("--timings", o.timings, "print per-check wall time to stderr");

  std::string series = "T";
  std::string poly;
  std::string ideal;
  std::optional<int> window;
  std::optional<int> degree;
  std::optional<int> veronese_n;

  auto* verify = app.add_subcommand("verify-suite", "run every check in a fixed order");
  auto* hilbert = app.add_subcommand("hilbert", "dimension series");
  hilbert->add_option("--series", series, "S, T, S_mod_IS or S_mod_T");
  auto* gens = app.add_subcommand("idealizer-gens", "new algebra generators of T per degree");
  auto* critdense = app.add_subcommand("critdense", "multiplicative independence certificate");
  critdense->add_option("--window", window, "orbit window for the rank evidence");
  critdense->add_option("--degree", degree, "largest form degree for the rank evidence");
  auto* probe = app.add_subcommand("probe", "right noetherian probe S/(fS + T)");
  probe->add_option("--f", poly, "element of T")->required();
  auto* ext = app.add_subcommand("ext-table", "Ext^j_S(S/I, S/J) table");
  ext->add_option("--J", ideal, "0 | I | phi^K(I) | U+ | point:a,b,... | gens:f;g")->required();
  auto* hom = app.add_subcommand("hom-table", "Hom_S(S/I, S/J) per degree");
  hom->add_option("--J", ideal, "0 | I | phi^K(I) | U+ | point:a,b,... | gens:f;g")->required();
  auto* segre = app.add_subcommand("segre", "Segre product witness dimensions");
  segre->add_subcommand("witness", "same as plain segre")->fallthrough();
  auto* opposite = app.add_subcommand("opposite-check", "S^op against the left twist by phi^-1");
  auto* veronese = app.add_subcommand("veronese", "Veronese idealizer comparison");
  veronese->add_option("--n", veronese_n, "Veronese step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const twl::Format format = twl::parse_format(o.format);
    twl::RingConfig c = resolve(o);
    twl::CommandOutput out;
    if (*verify) {
      out = twl::cmd_verify_suite(c, format);
    } else if (*hilbert) {
      out = twl::cmd_hilbert(c, series, format);
    } else if (*gens) {
      out = twl::cmd_idealizer_gens(c, format);
    } else if (*critdense) {
      if (window) c.density_window = *window;
      if (degree) c.density_degree = *degree;
      twl::validate(c);
      out = twl::cmd_critdense(c, format);
    } else if (*probe) {
      out = twl::cmd_probe(c, poly, format);
    } else if (*ext) {
      out = twl::cmd_ext_table(c, ideal, format);
    } else if (*hom) {
      out = twl::cmd_hom_table(c, ideal, format);
    } else if (*segre) {
      if (o.max_degree) c.segre_max_degree = *o.max_degree;
      twl::validate(c);
      out = twl::cmd_segre(c, format);
    } else if (*opposite) {
      if (o.max_degree) c.opposite_max_degree = *o.max_degree;
      twl::validate(c);
      out = twl::cmd_opposite_check(c, format);
    } else if (*veronese) {
      if (veronese_n) c.veronese_n = *veronese_n;
      if (o.max_degree) c.veronese_max_degree = *o.max_degree;
      twl::validate(c);
      out = twl::cmd_veronese(c, format);
    }

    if (o.out.empty()) {
      std::cout << out.text;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw twl::ConfigError("cannot write " + o.out);
      file << out.text;
    }
    if (o.timings) {
      for (const auto& [label, seconds] : out.timings) std::cerr << label << '\t' << seconds << " s\n";
    }
    return out.exit_code;
  } catch (const twl::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
