#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asympl/chart.hpp"
#include "asympl/dynamics.hpp"
#include "asympl/serialize.hpp"

namespace asympl {

struct InitialCondition {
  std::string name;
  std::vector<double> a;
  std::vector<double> alpha;
};

struct ExperimentConfig {
  std::vector<InitialCondition> initial_conditions;
  double T = 100.0;
  std::vector<RationalVector> levels;
  std::optional<Section> section;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::optional<Rational> I0;
};

struct SystemConfig {
  std::string name = "system";
  AlmostSymplecticChart chart = AlmostSymplecticChart::canonical(1, Box::unbounded(1));
  FourierFunction hamiltonian{1};
  /// Overrides the k found by normalization (reduce / symplectize only).
  std::optional<std::size_t> split_k;
  IntegratorConfig integrator;
  ExperimentConfig experiments;
};

/// Parses a configuration document; errors carry the JSON path (and, for
/// syntax errors, the line and column).
SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::string& path);
json config_to_json(const SystemConfig& cfg);
void save_config(const SystemConfig& cfg, const std::string& path);

SystemConfig demo_a4();
SystemConfig demo_a5();
SystemConfig demo_symplectic();
/// "a4", "a5" or "symplectic".
SystemConfig demo_by_name(const std::string& name);

struct CommandOptions {
  std::optional<double> T;
  std::optional<double> tol;
  std::optional<std::vector<RationalVector>> levels;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<Section> poincare;
  bool wrap = false;
};

/// Each command returns its JSON report; files go to opts.out_dir.
json cmd_check(const SystemConfig& cfg, const CommandOptions& opts);
json cmd_normalize(const SystemConfig& cfg, const CommandOptions& opts);
json cmd_reduce(const SystemConfig& cfg, const CommandOptions& opts);
json cmd_symplectize(const SystemConfig& cfg, const CommandOptions& opts);
json cmd_integrate(const SystemConfig& cfg, const CommandOptions& opts);
json cmd_analyze(const SystemConfig& cfg, const CommandOptions& opts);

/// "alpha_2=0" -> {angle 1, value 0}.
Section parse_section_flag(const std::string& text);
/// "c1,c2;c1,c2" -> levels.
std::vector<RationalVector> parse_levels_flag(const std::string& text);

/// Full command-line entry point; returns the process exit code
/// (0 ok, 2 validation, 3 classification, 4 regime, 5 numerical).
int run_cli(int argc, char** argv);

}  // namespace asympl
