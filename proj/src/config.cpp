#include "twistlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace twl {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

mpq_class rational_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": expected an integer or a string \"a/b\"");
}

std::vector<mpq_class> rational_list_from_json(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<mpq_class> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(rational_from_json(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

ordered_json rational_to_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

ordered_json rational_list_to_json(const std::vector<mpq_class>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

int int_from_json(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

Vec to_field(const std::vector<mpq_class>& v, const Field& field) {
  Vec out;
  out.reserve(v.size());
  for (const auto& q : v) {
    try {
      out.push_back(field.from_rational(q));
    } catch (const std::exception& e) {
      throw ConfigError("value " + q.get_str() + " is not defined in " + field.name() + ": " +
                        e.what());
    }
  }
  return out;
}

}  // namespace

Field parse_field(const std::string& text) {
  if (text == "rational" || text == "Q") return Field::rationals();
  const std::string prefix = "prime:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    unsigned long p = 0;
    try {
      std::size_t used = 0;
      p = std::stoul(digits, &used);
      if (used != digits.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("field '" + text + "': cannot read the modulus");
    }
    if (p > 0x7fffffffUL || !is_prime_u32(static_cast<std::uint32_t>(p)) || p == 2) {
      throw ConfigError("field '" + text + "': modulus must be an odd prime below 2^31");
    }
    return Field::prime(static_cast<std::uint32_t>(p));
  }
  throw ConfigError("field '" + text + "': expected 'rational' or 'prime:<p>'");
}

std::vector<mpq_class> parse_rational_list(const std::string& text) {
  std::string body = text;
  std::erase_if(body, [](char ch) { return ch == '[' || ch == ']' || ch == '(' || ch == ')'; });
  std::vector<mpq_class> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const std::size_t comma = body.find(',', start);
    std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::erase_if(item, [](char ch) { return ch == ' ' || ch == '\t'; });
    if (item.empty()) throw ConfigError("list '" + text + "': empty entry");
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception& e) {
      throw ConfigError("list '" + text + "': " + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

RingConfig config_from_json(const json& j, RingConfig c) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::set<std::string> known{
      "d", "automorphism", "point", "field", "maxDegree", "trailingZeros", "segreMaxDegree",
      "oppositeMaxDegree", "veroneseN", "veroneseMaxDegree", "veroneseJCap", "densityWindow",
      "densityDegree", "primeBound", "seed", "probes"};
  for (const auto& [key, value] : j.items()) {
    if (known.count(key) == 0) throw ConfigError("config: unknown key '" + key + "'");
  }
  if (j.contains("d")) c.d = int_from_json(j["d"], "d");
  if (j.contains("automorphism")) {
    const json& a = j["automorphism"];
    if (!a.is_object() || a.size() != 1 || !(a.contains("diag") || a.contains("matrix"))) {
      throw ConfigError("automorphism: expected {\"diag\": [...]} or {\"matrix\": [[...]]}");
    }
    if (a.contains("diag")) {
      c.diag = rational_list_from_json(a["diag"], "automorphism.diag");
      c.matrix.reset();
    } else {
      if (!a["matrix"].is_array()) throw ConfigError("automorphism.matrix: expected rows");
      std::vector<std::vector<mpq_class>> rows;
      for (std::size_t r = 0; r < a["matrix"].size(); ++r) {
        rows.push_back(rational_list_from_json(a["matrix"][r],
                                               "automorphism.matrix[" + std::to_string(r) + "]"));
      }
      c.matrix = std::move(rows);
      c.diag.reset();
    }
  }
  if (j.contains("point")) c.point = rational_list_from_json(j["point"], "point");
  if (j.contains("field")) {
    if (!j["field"].is_string()) throw ConfigError("field: expected a string");
    c.field = parse_field(j["field"].get<std::string>());
  }
  if (j.contains("maxDegree")) c.max_degree = int_from_json(j["maxDegree"], "maxDegree");
  if (j.contains("trailingZeros")) c.trailing = int_from_json(j["trailingZeros"], "trailingZeros");
  if (j.contains("segreMaxDegree")) {
    c.segre_max_degree = int_from_json(j["segreMaxDegree"], "segreMaxDegree");
  } else if (j.contains("d") && c.d >= 1) {
    // an inherited Segre bound shrinks to what the new d can hold
    c.segre_max_degree = std::min(c.segre_max_degree, segre_degree_limit(c.d));
  }
  if (j.contains("oppositeMaxDegree")) {
    c.opposite_max_degree = int_from_json(j["oppositeMaxDegree"], "oppositeMaxDegree");
  }
  if (j.contains("veroneseN")) c.veronese_n = int_from_json(j["veroneseN"], "veroneseN");
  if (j.contains("veroneseMaxDegree")) {
    c.veronese_max_degree = int_from_json(j["veroneseMaxDegree"], "veroneseMaxDegree");
  }
  if (j.contains("veroneseJCap")) c.veronese_j_cap = int_from_json(j["veroneseJCap"], "veroneseJCap");
  if (j.contains("densityWindow")) c.density_window = int_from_json(j["densityWindow"], "densityWindow");
  if (j.contains("densityDegree")) c.density_degree = int_from_json(j["densityDegree"], "densityDegree");
  if (j.contains("primeBound")) {
    if (!j["primeBound"].is_number_unsigned()) throw ConfigError("primeBound: expected a positive integer");
    c.prime_bound = j["primeBound"].get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("probes")) {
    if (!j["probes"].is_array()) throw ConfigError("probes: expected an array of strings");
    c.probes.clear();
    for (const auto& p : j["probes"]) {
      if (!p.is_string()) throw ConfigError("probes: expected an array of strings");
      c.probes.push_back(p.get<std::string>());
    }
  }
  return c;
}

RingConfig load_config_file(const std::string& path, RingConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return config_from_json(j, std::move(base));
}

ordered_json config_to_json(const RingConfig& c) {
  ordered_json j;
  j["d"] = c.d;
  if (c.diag) {
    j["automorphism"]["diag"] = rational_list_to_json(*c.diag);
  } else if (c.matrix) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : *c.matrix) rows.push_back(rational_list_to_json(r));
    j["automorphism"]["matrix"] = rows;
  }
  j["point"] = rational_list_to_json(c.point);
  j["field"] = c.field.name();
  j["maxDegree"] = c.max_degree;
  j["trailingZeros"] = c.trailing;
  j["segreMaxDegree"] = c.segre_max_degree;
  j["oppositeMaxDegree"] = c.opposite_max_degree;
  j["veroneseN"] = c.veronese_n;
  j["veroneseMaxDegree"] = c.veronese_max_degree;
  j["veroneseJCap"] = c.veronese_j_cap;
  j["densityWindow"] = c.density_window;
  j["densityDegree"] = c.density_degree;
  j["primeBound"] = c.prime_bound;
  j["seed"] = c.seed;
  j["probes"] = c.probes;
  return j;
}

void validate(const RingConfig& c) {
  if (c.d < 2) throw ConfigError("d must be at least 2 (got " + std::to_string(c.d) + ")");
  if (c.d > 12) throw ConfigError("d above 12 is outside the supported range");
  if (c.diag.has_value() == c.matrix.has_value()) {
    throw ConfigError("automorphism: give exactly one of diag or matrix");
  }
  if (c.diag) {
    if (c.diag->size() != static_cast<std::size_t>(c.d)) {
      throw ConfigError("automorphism.diag: expected " + std::to_string(c.d) + " multipliers");
    }
    for (const auto& p : *c.diag) {
      if (p == 0) throw ConfigError("automorphism.diag: multipliers must be nonzero");
    }
  } else {
    if (c.matrix->size() != static_cast<std::size_t>(c.d + 1)) {
      throw ConfigError("automorphism.matrix: expected " + std::to_string(c.d + 1) + " rows");
    }
    for (const auto& r : *c.matrix) {
      if (r.size() != static_cast<std::size_t>(c.d + 1)) {
        throw ConfigError("automorphism.matrix: rows must have " + std::to_string(c.d + 1) +
                          " entries");
      }
    }
  }
  if (c.point.size() != static_cast<std::size_t>(c.d + 1)) {
    throw ConfigError("point: expected " + std::to_string(c.d + 1) + " coordinates");
  }
  if (std::all_of(c.point.begin(), c.point.end(), [](const mpq_class& q) { return q == 0; })) {
    throw ConfigError("point: coordinates are all zero");
  }
  if (c.max_degree < 1 || c.max_degree > 40) throw ConfigError("maxDegree must lie in 1..40");
  if (c.trailing < 1) throw ConfigError("trailingZeros must be positive");
  if (c.segre_max_degree < 0 || c.opposite_max_degree < 0 || c.veronese_max_degree < 0 ||
      c.density_window < 0 || c.density_degree < 0) {
    throw ConfigError("degree bounds must be nonnegative");
  }
  if (c.veronese_n < 1) throw ConfigError("veroneseN must be positive");
  if (c.segre_max_degree > segre_degree_limit(c.d)) {
    throw ConfigError("segreMaxDegree " + std::to_string(c.segre_max_degree) + " is too large for d = " +
                      std::to_string(c.d) + " (at most " + std::to_string(segre_degree_limit(c.d)) + ")");
  }
  if (c.prime_bound < 2) throw ConfigError("primeBound must be at least 2");
  // the map must be invertible over the chosen field
  (void)make_automap(c, c.field);
  (void)make_point(c, c.field);
}

int segre_degree_limit(int d) {
  int m = 0;
  while (basis_size(d, m + 1) * basis_size(d, m + 1) <= kSegreAmbientLimit) ++m;
  return m;
}

AutoMap make_automap(const RingConfig& c, const Field& field) {
  try {
    if (c.diag) {
      const Vec m = to_field(*c.diag, field);
      for (const auto& x : m) {
        if (x.is_zero()) throw ConfigError("a multiplier vanishes in " + field.name());
      }
      return AutoMap::diagonal(m);
    }
    Matrix a;
    for (const auto& r : *c.matrix) a.push_back(to_field(r, field));
    return AutoMap(std::move(a));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("automorphism: ") + e.what());
  }
}

ProjPoint make_point(const RingConfig& c, const Field& field) {
  try {
    return ProjPoint(to_field(c.point, field));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("point: ") + e.what());
  }
}

std::vector<mpq_class> diagonal_multipliers(const RingConfig& c) {
  if (c.diag) return *c.diag;
  const auto& a = *c.matrix;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j && a[i][j] != 0) return {};
    }
  }
  if (a[0][0] == 0) return {};
  std::vector<mpq_class> out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i][i] / a[0][0]);
  return out;
}

GradedIdeal parse_ideal_spec(const std::string& raw, const TwistRing& ring, const GradedIdeal& i) {
  std::string spec = raw;
  std::erase_if(spec, [](char ch) { return ch == ' '; });
  const Field& field = ring.field();
  const int d = ring.d();
  if (spec == "0") return GradedIdeal::zero(d, field);
  if (spec == "I") return i;
  if (spec == "U+" || spec == "irrelevant") return GradedIdeal::irrelevant(d, field);
  if (spec.rfind("phi^", 0) == 0 && spec.size() > 7 && spec.substr(spec.size() - 3) == "(I)") {
    const std::string k = spec.substr(4, spec.size() - 7);
    long power = 0;
    try {
      std::size_t used = 0;
      power = std::stol(k, &used);
      if (used != k.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("ideal '" + raw + "': cannot read the exponent");
    }
    return i.transformed(ring.phi_power(power));
  }
  if (spec.rfind("point:", 0) == 0) {
    const auto coords = parse_rational_list(spec.substr(6));
    if (coords.size() != static_cast<std::size_t>(d + 1)) {
      throw ConfigError("ideal '" + raw + "': point needs " + std::to_string(d + 1) + " coordinates");
    }
    try {
      return GradedIdeal::point(ProjPoint(to_field(coords, field)), field);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("ideal '" + raw + "': " + e.what());
    }
  }
  if (spec.rfind("gens:", 0) == 0) {
    std::vector<HomogPoly> gens;
    std::string rest = raw.substr(raw.find(':') + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const std::size_t semi = rest.find(';', start);
      const std::string item = rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
      try {
        gens.push_back(parse_poly(item, d) * field.one());
      } catch (const std::exception& e) {
        throw ConfigError("ideal '" + raw + "': " + e.what());
      }
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    return GradedIdeal(d, field, std::move(gens));
  }
  throw ConfigError("ideal '" + raw +
                    "': expected 0, I, phi^K(I), U+, point:a,b,..., or gens:f1;f2;...");
}

}  // namespace twl
