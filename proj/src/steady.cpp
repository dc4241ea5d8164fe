#include "dicke/steady.hpp"

#include <cmath>
#include <utility>

#include "dicke/errors.hpp"
#include "dicke/schur.hpp"

namespace dicke {

Vec geometric_ladder(int twice_j, double alpha) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw DomainError("geometric_ladder: alpha must lie in [0, 1)");
  const int d = twice_j + 1;
  Vec tau(d);
  double v = 1.0;
  for (int l = 0; l < d; ++l, v *= alpha) tau[l] = v;
  tau /= tau.sum();
  return tau;
}

BlockState collective_steady_state(const BlockState& init, double alpha_c) {
  init.validate();
  BlockState out = init;
  for (Block& b : out.blocks) b.ladder = geometric_ladder(b.twice_j, alpha_c);
  return out;
}

BlockState collective_steady_state(const std::vector<Block>& weights,
                                   int n_qubits, double alpha_c) {
  BlockState st;
  st.n_qubits = n_qubits;
  st.blocks = weights;
  double total = 0.0;
  for (const Block& b : st.blocks) total += b.weight;
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("collective_steady_state: weights must sum to 1");
  for (Block& b : st.blocks) b.ladder = geometric_ladder(b.twice_j, alpha_c);
  return st;
}

LadderFixedPoint ladder_fixed_point(const SectorGenerator& generator) {
  const int d = generator.dim();
  if (classify_sector(generator.sector) == SectorKind::leaking)
    return {Vec::Zero(d), true};
  // Detailed balance pins p_{l+1}/p_l = alpha on every rung, so the null
  // vector is the geometric ladder; alpha = n/(n+1) from the stored
  // occupation.
  const double alpha = generator.occupation / (generator.occupation + 1.0);
  return {geometric_ladder(generator.sector.twice_j, alpha), false};
}

FullState steady_state_full(const FullLiouvillian& liouvillian,
                            std::optional<FullState> seed,
                            const SteadyOptions& options) {
  const BathParams& p = liouvillian.params();
  if (p.eta == 1.0 && !seed.has_value())
    throw ValidationError(
        "steady_state_full: eta = 1 keeps every sector's weight, so the "
        "fixed point depends on the initial state; pass a seed explicitly");
  FullState rho = seed.value_or(FullState::maximally_mixed(liouvillian.n_qubits()));
  rho.validate();
  if (rho.rho.rows() != liouvillian.dim())
    throw ValidationError("steady_state_full: seed dimension mismatch");

  // Closed-form route for the purely collective channel with a seed that is
  // diagonal in the spin basis: project, swap in geometric ladders,
  // reconstruct.
  if (p.eta == 1.0 && liouvillian.n_qubits() <= 12) {
    const SchurTransform schur = schur_transform(liouvillian.n_qubits());
    if (is_dicke_diagonal(rho, schur)) {
      const BlockState blocks =
          collective_steady_state(project_to_blocks(rho, schur), p.alpha_c);
      return {reconstruct_density(blocks, schur)};
    }
  }

  const double gamma_max =
      std::max(p.eta * p.gamma_c * (p.n_c() + 1.0),
               (1.0 - p.eta) * p.gamma_l * (p.n_l() + 1.0));
  double horizon = options.initial_horizon > 0.0
                       ? options.initial_horizon
                       : 1.0 / std::max(gamma_max, 1e-30);
  const auto deriv = [&](const CMat& m) { return liouvillian.apply(m); };

  // The residual can only settle below the integrator's own noise floor, so
  // the stepper must run tighter than the requested fixed-point tolerance.
  IntegrateOptions integ = options.integ;
  integ.abs_tol = std::min(integ.abs_tol, 0.01 * options.tol);
  integ.rel_tol = std::min(integ.rel_tol, 0.01 * options.tol);

  double residual = liouvillian.apply(rho.rho).cwiseAbs().maxCoeff();
  int stalls = 0;
  for (int it = 0; it < options.max_doublings; ++it) {
    if (residual < options.tol) return rho;
    rho.rho = integrate_adaptive(deriv, rho.rho, 0.0, horizon, integ);
    // Keep the map trace-preserving: never renormalize, only re-symmetrize
    // the floating-point noise.
    rho.rho = 0.5 * (rho.rho + rho.rho.adjoint().eval());
    const double previous = residual;
    residual = liouvillian.apply(rho.rho).cwiseAbs().maxCoeff();
    // Doubling the horizon should at least halve the residual while genuine
    // relaxation is still going on; once it stops improving, more time only
    // burns steps inside the noise ball.
    stalls = residual > 0.5 * previous ? stalls + 1 : 0;
    if (stalls >= 3) break;
    horizon *= 2.0;
  }
  if (residual < options.tol) return rho;
  throw ConvergenceError("steady_state_full: residual stalled above tolerance",
                         residual);
}

}  // namespace dicke
