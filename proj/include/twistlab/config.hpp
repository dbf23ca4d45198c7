#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "twistlab/automap.hpp"
#include "twistlab/twist_ring.hpp"

namespace twl {

/// Invalid configuration or command arguments (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RingConfig {
  int d = 2;
  /// Exactly one of diag / matrix is set after validation.
  std::optional<std::vector<mpq_class>> diag = std::vector<mpq_class>{2, 3};
  std::optional<std::vector<std::vector<mpq_class>>> matrix;
  std::vector<mpq_class> point{1, 1, 1};
  Field field;
  int max_degree = 10;
  int trailing = 3;

  int segre_max_degree = 6;
  int opposite_max_degree = 6;
  int veronese_n = 2;
  int veronese_max_degree = 6;
  int veronese_j_cap = 0;  // 0: ceil(N/2) + 1
  int density_window = 10;
  int density_degree = 4;
  std::uint64_t prime_bound = 1000000;
  std::uint64_t seed = 20240611;
  std::vector<std::string> probes{"x0 - 2*x1 + x2", "x0 - x1"};
};

/// Dense tensor pieces U_m (x) U_m beyond this many coordinates do not fit
/// comfortably in memory with exact scalars.
inline constexpr std::size_t kSegreAmbientLimit = 2500;
/// Largest m with dim(U_m)^2 within the limit.
int segre_degree_limit(int d);

/// Reads every recognized key; unknown keys are rejected so typos surface.
RingConfig config_from_json(const nlohmann::json& j, RingConfig base = {});
RingConfig load_config_file(const std::string& path, RingConfig base = {});
nlohmann::ordered_json config_to_json(const RingConfig& c);

/// Checks the invariants (d >= 2, nonzero multipliers, point length, ...).
void validate(const RingConfig& c);

/// "rational" or "prime:<p>".
Field parse_field(const std::string& text);
/// Comma-separated rationals, brackets optional: "2,3", "[1, 1/2, 3]".
std::vector<mpq_class> parse_rational_list(const std::string& text);

AutoMap make_automap(const RingConfig& c, const Field& field);
ProjPoint make_point(const RingConfig& c, const Field& field);
/// Multipliers p_1..p_d of a diagonal map, whether given as diag or as a
/// diagonal matrix normalized so that A_00 = 1; empty otherwise.
std::vector<mpq_class> diagonal_multipliers(const RingConfig& c);

/// Ideal descriptions for --J:
///   0 | I | phi^K(I) | U+ | irrelevant | point:a,b,... | gens:f1;f2;...
GradedIdeal parse_ideal_spec(const std::string& spec, const TwistRing& ring, const GradedIdeal& i);

}  // namespace twl
