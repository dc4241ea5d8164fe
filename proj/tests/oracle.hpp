#pragma once

// Brute-force references used only by the test suites.  Everything here
// trades efficiency for obviousness: literal Kronecker products, full
// eigendecompositions, factorial search.

#include <vector>

#include "dicke/bath.hpp"
#include "dicke/ergotropy.hpp"
#include "dicke/types.hpp"

namespace dicke::oracle {

// The full generator as one dense matrix on vectorized density matrices
// (column-major vec, so vec(A rho B) = (B^T (x) A) vec(rho)).  N <= 4.
struct DenseSuperoperator {
  int n_qubits = 0;
  CMat matrix;

  Eigen::Index dim() const { return matrix.rows(); }
  CVec apply_vec(const CVec& rho_vec) const { return matrix * rho_vec; }
  CMat apply(const CMat& rho) const;

  // Number of eigenvalues with |lambda| below the threshold, and the check
  // that every real part is nonpositive (up to roundoff).
  int near_zero_count(double threshold) const;
  double max_real_part() const;
};

DenseSuperoperator assemble_dense_superoperator(int n_qubits,
                                                const BathParams& params);

// Minimal energy over all permutations of the populations across the
// levels; factorial search, dim <= 8.
double exhaustive_passive_energy(const std::vector<double>& populations,
                                 const std::vector<double>& level_energies);

// Random density matrix (Hilbert-Schmidt-ish: G G^dagger normalized).
CMat random_density(int dim, std::uint64_t seed);

}  // namespace dicke::oracle
