// Command-line front end: steady-state sweeps, transients, leakage
// diagnostics, sector tables and the Haar balance study.  Exit codes:
// 0 success, 2 configuration error, 3 partial numeric failure (details
// flagged inside the CSVs).

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dicke/errors.hpp"
#include "dicke/run_config.hpp"
#include "dicke/runners.hpp"

namespace {

struct CliState {
  dicke::RunConfig config;
  std::string alpha_c = "0.5";
  std::string alpha_l = "0";
  std::string q = "0";
  std::string out_dir = ".";
  bool print_config = false;
};

// All options live on the root app so the config file stays a flat
// key=value list; subcommands only select the command and let their
// arguments fall through to the root parser.
CLI::Option* add_options(CLI::App& app, CliState& state) {
  app.add_option("--n", state.config.n_qubits, "number of battery qubits")
      ->capture_default_str();
  app.add_option("--eta", state.config.eta,
                 "collective fraction of the noise (1 = fully collective)")
      ->capture_default_str();
  app.add_option("--gamma-c", state.config.gamma_c, "collective rate")
      ->capture_default_str();
  app.add_option("--gamma-r", state.config.gamma_r,
                 "local/collective rate ratio; evolve accepts several "
                 "values as a curve family")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--alpha-c", state.alpha_c,
                 "collective-bath excitation parameter, value or "
                 "lo:hi:points grid")
      ->capture_default_str();
  app.add_option("--alpha-l", state.alpha_l,
                 "local-bath excitation parameter, value or lo:hi:points")
      ->capture_default_str();
  app.add_option("--q", state.q,
                 "initial product-Gibbs excitation ratio, value or "
                 "lo:hi:points")
      ->capture_default_str();
  app.add_option("--t-max", state.config.t_max,
                 "trajectory horizon in gamma_c*t units")
      ->capture_default_str();
  app.add_option("--t-points", state.config.t_points,
                 "number of trajectory sample points")
      ->capture_default_str();
  CLI::Option* seed =
      app.add_option("--seed", state.config.seed, "random seed (balance)");
  app.add_option("--samples", state.config.samples,
                 "Haar draws per (q, alpha_c) pair (balance)")
      ->capture_default_str();
  app.add_option("--out", state.out_dir, "output directory")
      ->capture_default_str();
  app.add_flag("--render", state.config.render,
               "also write SVG plots derived from the CSVs");
  app.add_option("--tol", state.config.tol,
                 "tolerance override (0 = library defaults)")
      ->capture_default_str();
  app.add_flag("--print-config", state.print_config,
               "print the effective configuration and exit");
  app.set_config("--config", "",
                 "flat key=value config file; flags override file values");
  return seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collective-dissipation battery simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // subcommand arguments reach the shared root options

  CliState state;
  CLI::Option* seed = add_options(app, state);
  const struct {
    const char* name;
    const char* blurb;
    dicke::Command command;
  } subs[] = {
      {"sectors", "spin-sector and coherence-block tables",
       dicke::Command::sectors},
      {"sweep", "steady-state ergotropy over parameter grids",
       dicke::Command::sweep},
      {"evolve", "charging transients on a time grid",
       dicke::Command::evolve},
      {"leakage", "bright-sector leakage diagnostics along a trajectory",
       dicke::Command::leakage},
      {"balance", "ergotropic balance of Haar-random preparations",
       dicke::Command::balance},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.blurb);
    const dicke::Command cmd = s.command;
    sub->callback([&state, cmd] { state.config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  state.config.seed_set = seed->count() > 0;

  if (state.print_config) {
    std::cout << app.config_to_str(true, true);
    return 0;
  }

  try {
    state.config.alpha_c = dicke::GridSpec::parse(state.alpha_c);
    state.config.alpha_l = dicke::GridSpec::parse(state.alpha_l);
    state.config.q = dicke::GridSpec::parse(state.q);
    state.config.out_dir = state.out_dir;
    const dicke::RunOutcome outcome = dicke::run(state.config);
    return outcome.exit_code;
  } catch (const std::invalid_argument& e) {  // domain/validation errors
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return 3;
  }
}
