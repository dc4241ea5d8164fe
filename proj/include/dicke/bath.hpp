#pragma once

namespace dicke {

// Reservoir parameters.  alpha_x = n_x/(n_x+1) is the detailed-balance ratio
// of upward to downward rates for reservoir x; eta mixes the collective
// channel (weight eta) with independent per-qubit channels (weight 1-eta).
struct BathParams {
  double gamma_c = 1.0;  // collective decay rate
  double gamma_l = 0.0;  // local (per-qubit) decay rate
  double eta = 1.0;      // collective fraction in [0, 1]
  double alpha_c = 0.0;  // collective Bose ratio in [0, 1)
  double alpha_l = 0.0;  // local Bose ratio in [0, 1)

  double n_c() const { return alpha_c / (1.0 - alpha_c); }
  double n_l() const { return alpha_l / (1.0 - alpha_l); }
  double gamma_ratio() const { return gamma_c > 0.0 ? gamma_l / gamma_c : 0.0; }

  // Throws DomainError when a field is out of range; alpha_x = 1 is rejected
  // here (infinite occupation) and supported only by closed-form limits.
  void validate() const;
};

}  // namespace dicke
