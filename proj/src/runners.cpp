#include "dicke/runners.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dicke/analysis.hpp"
#include "dicke/bath.hpp"
#include "dicke/bohr.hpp"
#include "dicke/csv.hpp"
#include "dicke/ergotropy.hpp"
#include "dicke/errors.hpp"
#include "dicke/integrate.hpp"
#include "dicke/reduced.hpp"
#include "dicke/render.hpp"
#include "dicke/sectors.hpp"
#include "dicke/states.hpp"
#include "dicke/steady.hpp"

namespace dicke {

namespace {

IntegrateOptions integrate_options(const RunConfig& config) {
  IntegrateOptions opt;
  if (config.tol > 0.0) {
    opt.rel_tol = config.tol;
    opt.abs_tol = config.tol * 1e-2;
  }
  return opt;
}

double steady_residual_tol(const RunConfig& config) {
  return config.tol > 0.0 ? config.tol : 1e-8;
}

std::vector<double> time_grid(const RunConfig& config) {
  std::vector<double> xs(config.t_points);
  for (int i = 0; i < config.t_points; ++i)
    xs[i] = config.t_points == 1
                ? 0.0
                : config.t_max * i / (config.t_points - 1);
  return xs;  // gamma_c * t units
}

void write_manifest(const RunConfig& config, RunOutcome& outcome) {
  const auto path = config.out_dir / "run_manifest.txt";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot open " + path.string());
  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  out << "# run manifest (the timestamp line is the only non-reproducible "
         "output)\n"
      << "timestamp_utc = " << stamp << '\n'
      << config.echo();
  for (const auto& file : outcome.outputs)
    out << "output = " << file.filename().string() << '\n';
  outcome.outputs.push_back(path);
}

}  // namespace

int worker_pool_size() {
#ifdef _OPENMP
  int width = omp_get_max_threads();
#else
  int width = 1;
#endif
  if (const char* env = std::getenv("DICKE_BATTERY_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) width = std::min(width, cap);
  }
  return width;
}

RunOutcome run_sectors(const RunConfig& config) {
  RunOutcome outcome;
  {
    CsvWriter csv(config.out_dir / "sectors.csv",
                  {"twice_j", "j", "multiplicity", "ladder_dim"});
    for (const SectorInfo& s : enumerate_sectors(config.n_qubits))
      csv.row({std::to_string(s.twice_j), half_label(s.twice_j),
               std::to_string(s.multiplicity), std::to_string(s.dim())});
  }
  outcome.outputs.push_back(config.out_dir / "sectors.csv");

  if (config.n_qubits <= 30) {
    BathParams params;
    params.gamma_c = config.gamma_c > 0.0 ? config.gamma_c : 1.0;
    params.eta = 1.0;
    params.alpha_c = config.alpha_c.lo;
    CsvWriter csv(config.out_dir / "bohr_sectors.csv",
                  {"twice_j", "twice_jp", "delta_jz", "dim", "kind",
                   "decay_gap"});
    for (const BohrSector& sector : enumerate_bohr_sectors(config.n_qubits)) {
      const SectorGenerator gen = build_sector_generator(sector, params);
      const DecayBound bound = gershgorin_gap(gen);
      csv.row({std::to_string(sector.twice_j), std::to_string(sector.twice_jp),
               std::to_string(sector.delta_jz), std::to_string(sector.dim()),
               classify_sector(sector) == SectorKind::thermalizing
                   ? "thermalizing"
                   : "leaking",
               format_number(bound.rate)});
    }
    outcome.outputs.push_back(config.out_dir / "bohr_sectors.csv");
  }
  return outcome;
}

namespace {

struct SweepCell {
  double alpha_c = 0.0;
  double alpha_l = 0.0;
  double q = 0.0;
  ErgotropyReport report;
  double residual = 0.0;
  bool ok = true;
};

void solve_cell(SweepCell& cell, const RunConfig& config,
                const ReducedBackend* backend) {
  BathParams params;
  params.gamma_c = config.gamma_c;
  params.gamma_l = config.gamma_l(config.gamma_r_single());
  params.eta = config.eta;
  params.alpha_c = cell.alpha_c;
  params.alpha_l = cell.alpha_l;
  params.validate();

  const double collective_rate = params.eta * params.gamma_c;
  const double local_rate = (1.0 - params.eta) * params.gamma_l;

  if (local_rate > 0.0) {
    const Mat gen = backend->generator(params);
    const Vec p = backend->steady_state(gen, steady_residual_tol(config));
    cell.residual = (gen * p).cwiseAbs().maxCoeff();
    cell.report = backend->ergotropy(p);
    return;
  }

  // Purely collective (or frozen) cell: the stationary blocks follow in
  // closed form from the product-Gibbs sector weights.
  std::vector<Block> blocks =
      product_gibbs_sector_weights(config.n_qubits, cell.q);
  BlockState state;
  if (collective_rate > 0.0) {
    state = collective_steady_state(blocks, config.n_qubits, cell.alpha_c);
  } else {
    state.n_qubits = config.n_qubits;
    state.blocks = std::move(blocks);
  }
  cell.report = ergotropy(state);
  cell.residual = 0.0;
}

}  // namespace

RunOutcome run_sweep(const RunConfig& config) {
  RunOutcome outcome;

  // Active axes in declaration order (alpha_c, alpha_l, q); cells run
  // row-major over them so the CSV order is deterministic.
  const std::vector<double> ac = config.alpha_c.values();
  const std::vector<double> al = config.alpha_l.values();
  const std::vector<double> qs = config.q.values();
  std::vector<SweepCell> cells;
  for (const double a : ac)
    for (const double l : al)
      for (const double v : qs)
        cells.push_back({a, l, v, {}, 0.0, true});

  std::optional<ReducedBackend> backend;
  const bool needs_backend =
      config.eta < 1.0 && config.gamma_r_single() > 0.0 &&
      config.gamma_c > 0.0;
  if (needs_backend) {
    backend.emplace(config.n_qubits);
    BathParams warm;
    warm.gamma_c = config.gamma_c;
    warm.gamma_l = config.gamma_l(config.gamma_r_single());
    warm.eta = config.eta;
    // Forces the lazy local-channel build before the worker pool starts.
    backend->generator(warm);
  }

  std::vector<std::string> errors(cells.size());
  const int pool = worker_pool_size();
#pragma omp parallel for schedule(dynamic) num_threads(pool)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cells.size());
       ++i) {
    try {
      solve_cell(cells[i], config, backend ? &*backend : nullptr);
    } catch (const std::exception& ex) {
      cells[i].ok = false;
      errors[i] = ex.what();
    }
  }

  bool any_failed = false;
  {
    CsvWriter csv(config.out_dir / "sweep.csv",
                  {"n", "eta", "gamma_r", "alpha_c", "alpha_l", "q", "energy",
                   "passive_energy", "ergotropy", "residual", "status"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const SweepCell& c = cells[i];
      if (!c.ok) {
        any_failed = true;
        csv.row({std::to_string(config.n_qubits), format_number(config.eta),
                 format_number(config.gamma_r_single()),
                 format_number(c.alpha_c), format_number(c.alpha_l),
                 format_number(c.q), "", "", "", "", "failed"});
        csv.comment("cell failure: " + errors[i]);
        continue;
      }
      csv.row({std::to_string(config.n_qubits), format_number(config.eta),
               format_number(config.gamma_r_single()),
               format_number(c.alpha_c), format_number(c.alpha_l),
               format_number(c.q), format_number(c.report.energy),
               format_number(c.report.passive_energy),
               format_number(c.report.ergotropy), format_number(c.residual),
               "ok"});
    }
  }
  outcome.outputs.push_back(config.out_dir / "sweep.csv");
  if (any_failed) outcome.exit_code = 3;

  if (config.render) {
    // Two active axes -> heatmap (first active axis on y, second on x).
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    if (config.alpha_c.is_grid()) axes.emplace_back("alpha_c", ac);
    if (config.alpha_l.is_grid()) axes.emplace_back("alpha_l", al);
    if (config.q.is_grid()) axes.emplace_back("q", qs);
    if (axes.size() == 2) {
      const auto& [y_name, y_axis] = axes[0];
      const auto& [x_name, x_axis] = axes[1];
      Mat value(y_axis.size(), x_axis.size());
      for (std::size_t r = 0; r < y_axis.size(); ++r)
        for (std::size_t c = 0; c < x_axis.size(); ++c) {
          const SweepCell& cell = cells[r * x_axis.size() + c];
          value(r, c) = cell.ok ? cell.report.ergotropy : 0.0;
        }
      render_heatmap(config.out_dir / "sweep.svg", x_axis, y_axis, value,
                     x_name, y_name, "steady-state extractable work", true);
      outcome.outputs.push_back(config.out_dir / "sweep.svg");
    }
  }
  return outcome;
}

RunOutcome run_evolve(const RunConfig& config) {
  RunOutcome outcome;
  const std::vector<double> xs = time_grid(config);
  const IntegrateOptions opt = integrate_options(config);

  const ReducedBackend backend(config.n_qubits);
  const Vec p0 = config.q.lo > 0.0 ? backend.product_gibbs(config.q.lo)
                                   : backend.ground();

  struct Curve {
    std::vector<std::array<double, 5>> rows;
    std::string failure;
  };
  std::vector<Curve> curves(config.gamma_r.size());

  if (config.eta < 1.0 && config.gamma_r_single() > 0.0) {
    BathParams warm;
    warm.gamma_c = config.gamma_c;
    warm.gamma_l = config.gamma_l(config.gamma_r.front());
    warm.eta = config.eta;
    backend.generator(warm);  // pre-build the shared local parts
  }

  const int pool = worker_pool_size();
#pragma omp parallel for schedule(dynamic) num_threads(pool)
  for (std::ptrdiff_t k = 0;
       k < static_cast<std::ptrdiff_t>(config.gamma_r.size()); ++k) {
    Curve& curve = curves[k];
    try {
      BathParams params;
      params.gamma_c = config.gamma_c;
      params.gamma_l = config.gamma_l(config.gamma_r[k]);
      params.eta = config.eta;
      params.alpha_c = config.alpha_c.lo;
      params.alpha_l = config.alpha_l.lo;
      params.validate();
      const ReducedPropagator prop(backend.generator(params), p0, opt);
      for (const double x : xs) {
        const double t = x / config.gamma_c;
        const Vec p = prop.at(t);
        const ErgotropyReport rep = backend.ergotropy(p);
        curve.rows.push_back(
            {t, x, rep.energy, rep.ergotropy, backend.bright_weight(p)});
      }
    } catch (const std::exception& ex) {
      curve.failure = ex.what();
    }
  }

  std::vector<LineSeries> series;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto name = "trajectory_" + std::to_string(k) + ".csv";
    CsvWriter csv(config.out_dir / name,
                  {"t", "gamma_c_t", "energy", "ergotropy", "p_sym"});
    csv.comment("gamma_r = " + format_number(config.gamma_r[k]));
    LineSeries line;
    line.label = "gamma_r=" + format_number(config.gamma_r[k]);
    for (const auto& r : curves[k].rows) {
      csv.row({format_number(r[0]), format_number(r[1]), format_number(r[2]),
               format_number(r[3]), format_number(r[4])});
      line.x.push_back(r[1]);
      line.y.push_back(r[3]);
    }
    if (!curves[k].failure.empty()) {
      csv.comment("integration stopped early: " + curves[k].failure);
      outcome.exit_code = 3;
    }
    outcome.outputs.push_back(config.out_dir / name);
    series.push_back(std::move(line));
  }

  if (config.render && config.t_points > 0) {
    render_line_plot(config.out_dir / "trajectories.svg", series,
                     "gamma_c t", "extractable work",
                     "charging transient");
    outcome.outputs.push_back(config.out_dir / "trajectories.svg");
  }
  return outcome;
}

RunOutcome run_leakage(const RunConfig& config) {
  RunOutcome outcome;
  BathParams params;
  params.gamma_c = config.gamma_c;
  params.gamma_l = config.gamma_l(config.gamma_r_single());
  params.eta = config.eta;
  params.alpha_c = config.alpha_c.lo;
  params.alpha_l = config.alpha_l.lo;
  params.validate();

  const FullLiouvillian liou(config.n_qubits, params);
  const IntegrateOptions opt = integrate_options(config);
  FullState state = config.q.lo > 0.0
                        ? FullState::product_gibbs(config.n_qubits, config.q.lo)
                        : FullState::ground(config.n_qubits);

  const std::vector<double> xs = time_grid(config);
  const auto deriv = [&liou](const CMat& r) { return liou.apply(r); };

  bool stopped = false;
  std::string failure;
  LineSeries lam_f{"lambda_formula", {}, {}};
  LineSeries lam_n{"lambda_numeric", {}, {}};
  LineSeries psym{"p_sym", {}, {}};
  {
    CsvWriter csv(config.out_dir / "leakage.csv",
                  {"t", "gamma_c_t", "p_sym", "mean_k", "mean_k2", "mean_h",
                   "mean_h2", "lambda_formula", "lambda_numeric",
                   "degenerate"});
    double t = 0.0;
    for (const double x : xs) {
      const double t_next = x / config.gamma_c;
      try {
        if (t_next > t) {
          state.rho = integrate_adaptive(deriv, state.rho, t, t_next, opt);
          state.rho = 0.5 * (state.rho + state.rho.adjoint().eval());
          t = t_next;
        }
        const LeakageReport rep = leakage_functional(state, params);
        csv.row({format_number(t_next), format_number(x),
                 format_number(rep.p_sym), format_number(rep.mean_k),
                 format_number(rep.mean_k2), format_number(rep.mean_h),
                 format_number(rep.mean_h2), format_number(rep.lambda_formula),
                 format_number(rep.lambda_numeric),
                 rep.degenerate ? "1" : "0"});
        lam_f.x.push_back(x);
        lam_f.y.push_back(rep.lambda_formula);
        lam_n.x.push_back(x);
        lam_n.y.push_back(rep.lambda_numeric);
        psym.x.push_back(x);
        psym.y.push_back(rep.p_sym);
      } catch (const std::exception& ex) {
        stopped = true;
        failure = ex.what();
        break;
      }
    }
    if (stopped) csv.comment("run stopped early: " + failure);
  }
  outcome.outputs.push_back(config.out_dir / "leakage.csv");
  if (stopped) outcome.exit_code = 3;

  if (config.render && !lam_f.x.empty()) {
    render_line_plot(config.out_dir / "leakage.svg", {lam_f, lam_n, psym},
                     "gamma_c t", "", "bright-sector leakage");
    outcome.outputs.push_back(config.out_dir / "leakage.svg");
  }
  return outcome;
}

RunOutcome run_balance(const RunConfig& config) {
  RunOutcome outcome;
  const SchurTransform schur = schur_transform(config.n_qubits);
  const std::vector<double> qs = config.q.values();
  const std::vector<double> acs = config.alpha_c.values();

  struct Draw {
    int pair = 0;
    int sample = 0;
    double q = 0.0;
    double alpha_c = 0.0;
    BalanceReport report;
    bool ok = true;
    std::string error;
  };
  std::vector<Draw> draws;
  {
    int pair = 0;
    for (const double qv : qs)
      for (const double ac : acs) {
        for (int s = 0; s < config.samples; ++s)
          draws.push_back({pair, s, qv, ac, {}, true, {}});
        ++pair;
      }
  }

  // One generator per (pair, sample), seeded deterministically, so the
  // worker pool cannot perturb the draws.
  const int pool = worker_pool_size();
#pragma omp parallel for schedule(dynamic) num_threads(pool)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(draws.size());
       ++i) {
    Draw& d = draws[i];
    try {
      std::mt19937_64 rng(config.seed ^
                          (0x9e3779b97f4a7c15ULL *
                           (static_cast<std::uint64_t>(d.pair) * 65537ULL +
                            static_cast<std::uint64_t>(d.sample) + 1ULL)));
      const CMat u = haar_unitary(1 << config.n_qubits, rng);
      BathParams params;
      params.gamma_c = config.gamma_c > 0.0 ? config.gamma_c : 1.0;
      params.eta = 1.0;
      params.alpha_c = d.alpha_c;
      d.report = ergotropic_balance(d.q, u, params, schur);
    } catch (const std::exception& ex) {
      d.ok = false;
      d.error = ex.what();
    }
  }

  bool any_failed = false;
  double max_delta = 0.0;
  bool have_delta = false;
  {
    CsvWriter csv(config.out_dir / "balance.csv",
                  {"kind", "sample", "q", "alpha_c", "delta_w",
                   "delta_w_initial_final", "prep_cost", "w_rotated",
                   "w_unrotated"});
    for (const Draw& d : draws) {
      if (!d.ok) {
        any_failed = true;
        csv.row({"sample", std::to_string(d.sample), format_number(d.q),
                 format_number(d.alpha_c), "", "", "", "", "failed"});
        csv.comment("sample failure: " + d.error);
        continue;
      }
      if (!have_delta || d.report.delta_w > max_delta) {
        max_delta = d.report.delta_w;
        have_delta = true;
      }
      csv.row({"sample", std::to_string(d.sample), format_number(d.q),
               format_number(d.alpha_c), format_number(d.report.delta_w),
               format_number(d.report.delta_w_initial_final),
               format_number(d.report.prep_cost),
               format_number(d.report.w_rotated),
               format_number(d.report.w_unrotated)});
    }
    csv.row({"summary", std::to_string(draws.size()), "", "",
             have_delta ? format_number(max_delta) : "", "", "", "", ""});
  }
  outcome.outputs.push_back(config.out_dir / "balance.csv");
  if (any_failed) outcome.exit_code = 3;
  return outcome;
}

RunOutcome run(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);

  RunOutcome outcome;
  switch (config.command) {
    case Command::sectors:
      outcome = run_sectors(config);
      break;
    case Command::sweep:
      outcome = run_sweep(config);
      break;
    case Command::evolve:
      outcome = run_evolve(config);
      break;
    case Command::leakage:
      outcome = run_leakage(config);
      break;
    case Command::balance:
      outcome = run_balance(config);
      break;
  }
  write_manifest(config, outcome);
  return outcome;
}

}  // namespace dicke
