#pragma once

#include <vector>

#include "dicke/bath.hpp"
#include "dicke/bohr.hpp"
#include "dicke/ergotropy.hpp"
#include "dicke/full_liouvillian.hpp"
#include "dicke/integrate.hpp"
#include "dicke/reduced.hpp"
#include "dicke/states.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Battery observables sampled along an evolution.  Times are in units of
// the inverse collective rate, so gamma_c * t is the natural x axis.
struct Trajectory {
  std::vector<double> times;
  std::vector<ErgotropyReport> samples;
  std::vector<double> bright_weight;  // same length as times when tracked

  // Times strictly increasing, one sample per time, every sample with
  // nonnegative extractable and passive energy.
  void validate() const;
};

// exp(G t) applied to a sector population/coherence vector.  Dense
// scaling-and-squaring exponential for sectors up to dimension 64, adaptive
// stepping (using the tri-diagonal structure) above that.
Vec evolve_sector(const SectorGenerator& generator, const Vec& p0, double t,
                  const IntegrateOptions& options = {});

// Dense trajectory of d rho/dt = L[rho] sampled at the grid times (strictly
// increasing, nonnegative).  The trace is conserved by the generator itself;
// no renormalization is applied at any point.  Samples carry energy,
// ergotropy and the bright-sector weight.
Trajectory evolve_full(const FullState& rho0,
                       const FullLiouvillian& liouvillian,
                       const std::vector<double>& time_grid,
                       const IntegrateOptions& options = {});

// Same observables on the permutation-invariant coordinate space; `p0` and
// `generator` must come from the given backend.
Trajectory evolve_reduced(const ReducedBackend& backend, const Mat& generator,
                          const Vec& p0, const std::vector<double>& time_grid,
                          const IntegrateOptions& options = {});

// Max pairwise deviation of the ergotropy curves, read against the rescaled
// time x = gamma_c * t, over x <= x_max, for parameter sets that differ only
// in the rate ratio gamma_l / gamma_c.  All sets must share eta, alpha_c and
// gamma_c and have alpha_l = 0; evolution starts from the ground state.  The
// local channel annihilates the ground state, so the curves separate only at
// second order in x.
double early_time_collapse_check(int n_qubits,
                                 const std::vector<BathParams>& params_list,
                                 double x_max,
                                 const IntegrateOptions& options = {});

}  // namespace dicke
