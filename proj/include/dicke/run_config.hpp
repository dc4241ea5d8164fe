#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dicke {

// "lo:hi:points" axis specification; a bare number is a fixed (non-swept)
// value.  Grids need at least two points and increasing bounds.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 1;

  static GridSpec parse(const std::string& text);
  static GridSpec fixed(double value) { return {value, value, 1}; }

  bool is_grid() const { return points >= 2; }
  std::vector<double> values() const;
  std::string str() const;
};

enum class Command { sectors, sweep, evolve, leakage, balance };

std::string command_name(Command command);

// Everything a run needs, assembled from defaults, an optional flat
// key-value config file and command-line flags (flags win).  The same
// struct drives every subcommand; validate() enforces the per-command
// constraints and throws ValidationError/DomainError on bad input.
struct RunConfig {
  Command command = Command::sectors;
  int n_qubits = 4;
  double eta = 1.0;
  double gamma_c = 1.0;
  // Ratio gamma_l / gamma_c.  evolve accepts several values (a curve
  // family); every other command uses the first entry.
  std::vector<double> gamma_r = {1.0};
  GridSpec alpha_c = GridSpec::fixed(0.5);
  GridSpec alpha_l = GridSpec::fixed(0.0);
  GridSpec q = GridSpec::fixed(0.0);
  double t_max = 10.0;  // trajectory horizon, in gamma_c * t units
  int t_points = 201;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int samples = 100;  // Haar draws per (q, alpha_c) pair in balance
  std::filesystem::path out_dir = ".";
  bool render = false;
  double tol = 0.0;  // 0 = library defaults

  double gamma_r_single() const { return gamma_r.front(); }
  double gamma_l(double ratio) const { return ratio * gamma_c; }

  void validate() const;
  // Flat key = value block (the config-file schema) echoing this config.
  std::string echo() const;
};

}  // namespace dicke
