#pragma once

#include <vector>

#include "dicke/bath.hpp"
#include "dicke/types.hpp"

namespace dicke {

// One invariant block of the collective generator: the set of density-matrix
// elements |j,m,sigma><j',m',sigma'| with fixed (j, j', sigma, sigma') and
// fixed coherence order delta_jz = m - m'.  The generator couples only
// neighboring rungs within a block, so each block is tri-diagonal.
struct BohrSector {
  int twice_j = 0;
  int twice_jp = 0;
  int sigma = 1;
  int sigma_p = 1;
  int delta_jz = 0;  // m - m', an integer since 2j = 2j' = N (mod 2)

  // Lowest/highest 2m compatible with m in [-j, j] and m' = m - delta in
  // [-j', j'].
  int twice_m_lo() const;
  int twice_m_hi() const;
  int dim() const { return (twice_m_hi() - twice_m_lo()) / 2 + 1; }
};

enum class SectorKind { thermalizing, leaking };

// Population-conserving iff the block sits on the diagonal of the spin label:
// j = j' and delta_jz = 0 (sigma labels may differ; those coherence blocks
// still conserve weight).  Classification is purely structural — numeric
// column sums can degenerate to zero on leaking blocks at n_c = 0.
SectorKind classify_sector(const BohrSector& sector);

// All (j, j', delta) blocks with sigma collapsed to the representative pair
// (1, 1); the generator does not depend on the sigma labels.  N <= 30.
std::vector<BohrSector> enumerate_bohr_sectors(int n_qubits);

// Full enumeration with sigma resolution; block count grows with the squared
// multiplicities, so this is capped at N <= 12.
std::vector<BohrSector> enumerate_bohr_sectors_sigma_resolved(int n_qubits);

// Tri-diagonal generator of one sector under purely collective dissipation.
// Row l corresponds to the rung m = m_lo + l.  `lower[l]` is the gain rate
// into rung l+1 from rung l (upward transitions, entry (l+1, l)); `upper[l]`
// is the gain rate into rung l from rung l+1 (downward transitions, entry
// (l, l+1)); both arrays have dim-1 entries.
struct SectorGenerator {
  BohrSector sector;
  double gamma = 0.0;       // collective rate used in the build
  double occupation = 0.0;  // n_c used in the build
  std::vector<double> diag;
  std::vector<double> lower;
  std::vector<double> upper;

  int dim() const { return static_cast<int>(diag.size()); }
  Mat dense() const;
  // Column sum d_l + lower_l + upper_{l-1}; zero on thermalizing sectors.
  double column_sum(int l) const;
};

// Valid only for the purely collective channel: eta must equal 1 (the block
// decomposition does not survive local jumps) and alpha_c < 1.  Rates follow
// the arithmetic structure of the ladder factors A_m = (j+m)(j-m+1):
//   diag    = -(gamma/2) [ (n+1)(A_m + A'_m') + n (A_{m+1} + A'_{m'+1}) ]
//   down    =  gamma (n+1) sqrt(A_{m+1} A'_{m'+1})   (rung l+1 -> l)
//   up      =  gamma  n    sqrt(A_{m+1} A'_{m'+1})   (rung l -> l+1)
// so up = alpha_c * down on every rung pair, which is the detailed-balance
// relation that fixes the geometric fixed point on thermalizing sectors.
SectorGenerator build_sector_generator(const BohrSector& sector,
                                       const BathParams& params);

// Worst-case decay rate of a leaking sector from column-sum bounds: every
// eigenvalue of the generator has real part <= -rate.  Thermalizing sectors
// return rate = 0 with the flag set.
struct DecayBound {
  double rate = 0.0;
  bool thermalizing = false;
};

DecayBound gershgorin_gap(const SectorGenerator& generator);

}  // namespace dicke
