#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/config.hpp"
#include "twistlab/idealizer.hpp"
#include "twistlab/report.hpp"

namespace twl {

enum class Format { kJson, kCsv };
Format parse_format(const std::string& text);

struct CommandOutput {
  std::string text;
  int exit_code = 0;
  /// (label, seconds); printed to stderr on request, never part of text.
  std::vector<std::pair<std::string, double>> timings;
};

/// How the orbit of c behaves inside the configured window.
enum class OrbitMode {
  kGeneric,     // c_{-N}..c_N pairwise distinct
  kDegenerate,  // the orbit is the single point c (phi acts trivially on P^d near c)
  kCoincident,  // repeats without being constant
};

/// The rings a command works on, built once from a validated config.
struct Instance {
  explicit Instance(const RingConfig& config, std::optional<Field> field = {});

  RingConfig config;
  Field field;
  IdealizerRing t;
  OrbitMode mode;

  const TwistRing& ring() const { return t.ring(); }
};

std::string to_string(OrbitMode m);

/// Runs every suite check in a fixed order.
Report run_verify_suite(const RingConfig& config);

CommandOutput cmd_verify_suite(const RingConfig& config, Format format);
CommandOutput cmd_hilbert(const RingConfig& config, const std::string& series, Format format);
CommandOutput cmd_idealizer_gens(const RingConfig& config, Format format);
CommandOutput cmd_critdense(const RingConfig& config, Format format);
CommandOutput cmd_probe(const RingConfig& config, const std::string& f, Format format);
CommandOutput cmd_ext_table(const RingConfig& config, const std::string& ideal, Format format);
CommandOutput cmd_hom_table(const RingConfig& config, const std::string& ideal, Format format);
CommandOutput cmd_segre(const RingConfig& config, Format format);
CommandOutput cmd_opposite_check(const RingConfig& config, Format format);
CommandOutput cmd_veronese(const RingConfig& config, Format format);

/// An off-orbit test point (1:5:7:11:...) with d+1 coordinates.
std::vector<mpq_class> off_orbit_coordinates(int d);

}  // namespace twl
