#pragma once

#include <cstdint>
#include <vector>

#include "dicke/schur.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Dense density matrix on the full 2^N product space.  Qubit 1 is the most
// significant bit of the basis index; bit value 1 means excited.
struct FullState {
  CMat rho;

  int n_qubits() const;
  // Throws ValidationError unless rho is Hermitian, unit trace and its
  // dimension is a power of two.  Positivity is checked down to -tol on the
  // smallest eigenvalue.
  void validate(double tol = 1e-10) const;

  static FullState ground(int n_qubits);
  static FullState maximally_mixed(int n_qubits);
  // Product of identical single-qubit Gibbs states with excited/ground
  // population ratio q: each qubit is diag(1, q)/(1+q).
  static FullState product_gibbs(int n_qubits, double q);
  // |11...1><11...1|, the fully excited symmetric state.
  static FullState all_excited(int n_qubits);
};

// One spin-j block of a sector-decomposed state.  The block acts on the
// degeneracy space (chi, a nu_j x nu_j matrix) tensored with the 2j+1 ladder
// levels (`ladder`, a probability vector over m = -j..j).  For permutation-
// invariant states chi is proportional to the identity; such blocks store an
// empty chi together with `weight` = tr chi, which keeps the representation
// usable when nu_j is astronomically large.
struct Block {
  int twice_j = 0;
  std::uint64_t multiplicity = 0;  // nu_j
  double weight = 0.0;             // tr chi
  CMat chi;                        // explicit nu_j x nu_j matrix, or empty
  Vec ladder;                      // length 2j+1, sums to 1 (m ascending)

  bool isotropic() const { return chi.size() == 0; }
  // Materializes chi (isotropic blocks become (weight/nu) * identity);
  // throws ResourceError if nu_j is too large to hold densely.
  CMat explicit_chi() const;
};

// Sector-decomposed state: a direct sum over j of chi_j tensor ladder_j.
// Blocks are kept in j-descending order.
struct BlockState {
  int n_qubits = 0;
  std::vector<Block> blocks;

  double total_weight() const;  // sum of tr chi_j, 1 for a normalized state
  // Checks normalization, ladder normalization, Hermiticity/PSD of explicit
  // chi blocks; throws ValidationError on failure.
  void validate(double tol = 1e-9) const;
};

// Sector weights of the product Gibbs state rho_q^(x N): the projection of
// q^K/(1+q)^N onto each spin-j family.  chi_j is isotropic by permutation
// invariance, so only (j, weight) pairs are produced; weights are computed
// combinatorially (a basis state with k excitations has weight
// q^k/(1+q)^N and level m = k - N/2 appears in nu_j copies of spin j).
// Valid for any N <= 64; q in [0, 1] (q = 1 is the maximally mixed state).
std::vector<Block> product_gibbs_sector_weights(int n_qubits, double q);

// Projects a density matrix onto the sector decomposition:
// (chi_j)_{sigma sigma'} = sum_m <j,m,sigma| rho |j,m,sigma'>, and the
// ladder of block j is the normalized m-marginal of the j family.
// Hermiticity of every chi_j is verified rather than assumed.
BlockState project_to_blocks(const FullState& state, const SchurTransform& schur);

// Rebuilds the dense density matrix sum_j chi_j (x) ladder_j from a block
// state (inverse of project_to_blocks for states of product form).
CMat reconstruct_density(const BlockState& state, const SchurTransform& schur);

// True when rho is diagonal in the |j,m,sigma> basis to the given tolerance.
bool is_dicke_diagonal(const FullState& state, const SchurTransform& schur,
                       double tol = 1e-12);

// Amplitude vector of the symmetric Dicke state with k excitations: the
// equal-weight superposition of all basis states with popcount k.  These
// span the j = N/2 (bright) family, which is multiplicity-free, so no basis
// transform is needed to build them.
Vec symmetric_dicke_state(int n_qubits, int k);

// Bright-ladder populations <D_k| rho |D_k> for k = 0..N.  Their sum is the
// bright-sector weight p_sym.
std::vector<double> bright_populations(const CMat& rho);

}  // namespace dicke
