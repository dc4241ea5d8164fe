#pragma once

#include <cstdint>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

// Exact binomial coefficient.  Computed in 128-bit intermediates; throws
// DomainError if the result does not fit in 64 bits (never happens for
// n <= 64) or if n < 0.  C(n, k) = 0 for k < 0 or k > n.
std::uint64_t binomial(int n, int k);

// One total-spin sector of the N-qubit permutation decomposition.
struct SectorInfo {
  int twice_j = 0;                 // 2j
  std::uint64_t multiplicity = 0;  // nu_j, number of copies of the spin-j irrep
  int dim() const { return twice_j + 1; }  // 2j + 1 ladder states
};

// Multiplicity nu_j = C(N, N/2 - j) - C(N, N/2 - j - 1).
std::uint64_t sector_multiplicity(int n_qubits, int twice_j);

// All admissible sectors for N qubits, j descending from N/2 down to 0 or
// 1/2.  Valid for 1 <= N <= 64; the dimension sum rule
// sum_j nu_j (2j+1) = 2^N is asserted internally.
std::vector<SectorInfo> enumerate_sectors(int n_qubits);

// (j+m)(j-m+1), the squared matrix element of the collective lowering
// operator between |j,m> and |j,m-1>.  Arguments are doubled (2j, 2m).
double lowering_factor(int twice_j, int twice_m);

// Ladder matrix-element factors for one spin-j multiplet, indexed by
// l = 0..2j with m = -j + l.  a[l] = (j+m)(j-m+1) belongs to the lowering
// direction, b[l] = (j-m)(j+m+1) to the raising direction, so a[0] = 0 and
// b[2j] = 0.
struct LadderCoefficients {
  int twice_j = 0;
  std::vector<double> a;
  std::vector<double> b;
};

LadderCoefficients ladder_coefficients(int twice_j);

}  // namespace dicke
