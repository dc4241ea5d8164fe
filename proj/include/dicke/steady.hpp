#pragma once

#include <optional>

#include "dicke/bohr.hpp"
#include "dicke/full_liouvillian.hpp"
#include "dicke/integrate.hpp"
#include "dicke/states.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Thermal ladder tau_j over m = -j..j: tau_m proportional to alpha^(j+m),
// normalized by Z_j = (1 - alpha^(2j+1))/(1 - alpha).  alpha in [0, 1).
Vec geometric_ladder(int twice_j, double alpha);

// Exact stationary state of the purely collective channel: every block keeps
// the chi_j it started with while its ladder relaxes to the geometric
// profile at alpha_c.  m-coherences die out, sigma-coherences inside chi_j
// survive.  `init` must be normalized; its ladders are discarded.
BlockState collective_steady_state(const BlockState& init, double alpha_c);

// Same, starting from bare sector weights (isotropic chi blocks).
BlockState collective_steady_state(const std::vector<Block>& weights,
                                   int n_qubits, double alpha_c);

// Null vector of a thermalizing sector generator, normalized to a
// probability vector; the result matches the geometric law exactly.  Leaking
// sectors have no stationary weight: the vector comes back zero with the
// flag set.
struct LadderFixedPoint {
  Vec populations;
  bool leaking = false;
};

LadderFixedPoint ladder_fixed_point(const SectorGenerator& generator);

struct SteadyOptions {
  double tol = 1e-10;          // max-norm residual |L[rho]| to reach
  int max_doublings = 48;      // horizon doublings before giving up
  double initial_horizon = 0;  // 0 = auto (one unit of the fastest rate)
  IntegrateOptions integ;
};

// Fixed point by adaptive time integration with horizon doubling: evolve,
// measure the residual, double the horizon until the residual sits below
// tol.  For eta < 1 the chain is primitive and the result does not depend on
// the seed (the default seed is the maximally mixed state).  At eta = 1 the
// fixed point genuinely depends on the initial state, so a seed is required;
// seeds that are diagonal in the |j,m,sigma> basis take the closed-form
// block route instead of integrating.
FullState steady_state_full(const FullLiouvillian& liouvillian,
                            std::optional<FullState> seed = std::nullopt,
                            const SteadyOptions& options = {});

}  // namespace dicke
