#include "dicke/dynamics.hpp"

#include <cmath>
#include <cstddef>
#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/errors.hpp"

namespace dicke {

void Trajectory::validate() const {
  if (samples.size() != times.size())
    throw ValidationError("Trajectory: one sample per time required");
  if (!bright_weight.empty() && bright_weight.size() != times.size())
    throw ValidationError("Trajectory: bright-weight length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ValidationError("Trajectory: times must increase strictly");
  for (const ErgotropyReport& s : samples)
    if (s.ergotropy < -1e-9 || s.passive_energy < -1e-9)
      throw ValidationError("Trajectory: sample with negative energy split");
}

Vec evolve_sector(const SectorGenerator& generator, const Vec& p0, double t,
                  const IntegrateOptions& options) {
  const int d = generator.dim();
  if (p0.size() != d)
    throw ValidationError("evolve_sector: vector does not match the sector");
  if (t < 0.0) throw DomainError("evolve_sector: time must be nonnegative");
  if (t == 0.0) return p0;

  if (d <= 64) {
    const Mat propagator = (generator.dense() * t).exp();
    return propagator * p0;
  }
  const auto tri_apply = [&generator, d](const Vec& y) {
    Vec out(d);
    for (int l = 0; l < d; ++l) {
      double v = generator.diag[l] * y[l];
      if (l > 0) v += generator.lower[l - 1] * y[l - 1];
      if (l + 1 < d) v += generator.upper[l] * y[l + 1];
      out[l] = v;
    }
    return out;
  };
  return integrate_adaptive(tri_apply, p0, 0.0, t, options);
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("evolve: empty time grid");
  if (grid.front() < 0.0)
    throw ValidationError("evolve: times must be nonnegative");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ValidationError("evolve: time grid must increase strictly");
}

}  // namespace

Trajectory evolve_full(const FullState& rho0,
                       const FullLiouvillian& liouvillian,
                       const std::vector<double>& time_grid,
                       const IntegrateOptions& options) {
  check_grid(time_grid);
  if (rho0.rho.rows() != liouvillian.dim())
    throw ValidationError("evolve_full: state and generator dimensions differ");
  rho0.validate();

  const auto deriv = [&liouvillian](const CMat& r) {
    return liouvillian.apply(r);
  };

  Trajectory out;
  CMat rho = rho0.rho;
  double t = 0.0;
  for (const double t_next : time_grid) {
    if (t_next > t) {
      rho = integrate_adaptive(deriv, rho, t, t_next, options);
      t = t_next;
    }
    const FullState snapshot{rho};
    out.times.push_back(t_next);
    out.samples.push_back(ergotropy(snapshot));
    double p_sym = 0.0;
    for (const double q : bright_populations(rho)) p_sym += q;
    out.bright_weight.push_back(p_sym);
  }
  return out;
}

Trajectory evolve_reduced(const ReducedBackend& backend, const Mat& generator,
                          const Vec& p0, const std::vector<double>& time_grid,
                          const IntegrateOptions& options) {
  check_grid(time_grid);
  if (p0.size() != backend.dim() || generator.rows() != backend.dim())
    throw ValidationError(
        "evolve_reduced: inputs do not match the backend dimension");

  const ReducedPropagator prop(generator, p0, options);
  Trajectory out;
  for (const double t : time_grid) {
    const Vec p = prop.at(t);
    out.times.push_back(t);
    out.samples.push_back(backend.ergotropy(p));
    out.bright_weight.push_back(backend.bright_weight(p));
  }
  return out;
}

double early_time_collapse_check(int n_qubits,
                                 const std::vector<BathParams>& params_list,
                                 double x_max,
                                 const IntegrateOptions& options) {
  if (x_max < 0.0)
    throw DomainError("early_time_collapse_check: x_max must be nonnegative");
  if (params_list.size() < 2)
    throw ValidationError("early_time_collapse_check: need at least two sets");
  const BathParams& ref = params_list.front();
  for (const BathParams& p : params_list) {
    p.validate();
    if (p.eta != ref.eta || p.alpha_c != ref.alpha_c ||
        p.gamma_c != ref.gamma_c)
      throw ValidationError(
          "early_time_collapse_check: sets must share eta, alpha_c, gamma_c");
    if (p.alpha_l != 0.0)
      throw ValidationError(
          "early_time_collapse_check: defined for alpha_l = 0 only");
  }
  if (x_max == 0.0) return 0.0;

  const ReducedBackend backend(n_qubits);
  const Vec p0 = backend.ground();
  constexpr int kGrid = 32;

  std::vector<std::vector<double>> curves;
  for (const BathParams& p : params_list) {
    const ReducedPropagator prop(backend.generator(p), p0, options);
    std::vector<double> w(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
      const double t = x_max * i / (kGrid * p.gamma_c);
      w[i] = backend.ergotropy(prop.at(t)).ergotropy;
    }
    curves.push_back(std::move(w));
  }

  double dev = 0.0;
  for (std::size_t a = 0; a < curves.size(); ++a)
    for (std::size_t b = a + 1; b < curves.size(); ++b)
      for (int i = 0; i <= kGrid; ++i)
        dev = std::max(dev, std::abs(curves[a][i] - curves[b][i]));
  return dev;
}

}  // namespace dicke
