#pragma once

#include <vector>

#include "dicke/bath.hpp"
#include "dicke/full_liouvillian.hpp"
#include "dicke/states.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Instantaneous leakage rate out of the bright (j = N/2) sector together
// with the excitation/hole moments of the bright component it is built
// from.  `lambda_formula` is the closed form
//   (1-eta) gamma_l p_sym / N [ (n_l+1) <K(K-1)>_b + n_l <H(H-1)>_b ],
// `lambda_numeric` is -d p_sym / dt measured on a short evolution.  When
// the bright weight is below 1e-12 the conditional moments are undefined
// and the report comes back with the degenerate flag set.
struct LeakageReport {
  double p_sym = 0.0;
  double mean_k = 0.0;
  double mean_k2 = 0.0;
  double mean_h = 0.0;
  double mean_h2 = 0.0;
  double lambda_lower = 0.0;  // decay-induced term, prop. to (n_l+1)
  double lambda_raise = 0.0;  // absorption-induced term, prop. to n_l
  double lambda_formula = 0.0;
  double lambda_numeric = 0.0;
  bool degenerate = false;
};

LeakageReport leakage_functional(const FullState& state,
                                 const BathParams& params);

// Second-moment inequalities <K(K-1)> >= <K>(<K>-1) and the hole analogue,
// evaluated on the bright component.  Requires p_sym > 0.
struct JensenCheck {
  double k_lhs = 0.0;  // <K(K-1)>
  double k_rhs = 0.0;  // <K>(<K>-1)
  double h_lhs = 0.0;
  double h_rhs = 0.0;
  bool holds = false;
};

JensenCheck jensen_bound_check(const FullState& state);

// Two-emitter vacuum decay kernel in free space, normalized to the single-
// emitter rate: a function of the scaled separation x = k0 r and the angle
// between the separation and the dipole axis.  Approaches 1 as x -> 0
// (fully collective) and 0 as x -> infinity (independent emitters).  The
// small-x region is evaluated by series to dodge the 1/x^2 - 1/x^3
// cancellation.  x must be positive.
double free_space_kernel(double x, double alpha_angle);

// Rectangular ergotropy sweep over (alpha_c, alpha_l), axes ascending.
struct SweepGrid {
  std::vector<double> alpha_c;
  std::vector<double> alpha_l;
  Mat value;  // value(i, k) at (alpha_c[i], alpha_l[k])

  void validate() const;  // rectangular, at least 5 x 5, axes increasing
};

// Location and extent of the activation lobe: the argmax of the sweep and
// the half-maximum extent of the 1-d profiles through it, measured on
// linear interpolation of the grid (clamped at the grid edges when the
// profile never falls below half maximum).
struct LobeDescriptor {
  double alpha_c_star = 0.0;
  double alpha_l_star = 0.0;
  double peak = 0.0;
  double width_alpha_c = 0.0;
  double width_alpha_l = 0.0;
  bool interior = false;  // argmax away from every grid edge
  bool empty = false;     // sweep identically zero
};

LobeDescriptor activation_lobe(const SweepGrid& grid);

}  // namespace dicke
