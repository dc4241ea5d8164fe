#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "dicke/bath.hpp"
#include "dicke/types.hpp"

namespace dicke {

using SparseD = Eigen::SparseMatrix<double>;

// Lowering operator of qubit `site` (1-based; qubit 1 = most significant
// bit) on the 2^N product space.
SparseD sigma_minus(int n_qubits, int site);

// Collective lowering operator J_- = sum_i sigma_-^(i).
SparseD collective_lowering(int n_qubits);

// Excitation-number operator K = sum_i |1><1|_i (diagonal).
SparseD excitation_number(int n_qubits);

// Action of the mixed collective/local generator on dense density matrices:
//   L[rho] = eta gamma_c [ (n_c+1) D[J-] + n_c D[J+] ] rho
//          + (1-eta) gamma_l sum_i [ (n_l+1) D[s_-^i] + n_l D[s_+^i] ] rho
// with D[L]rho = L rho L^T - (1/2){L^T L, rho}.  Jump operators are kept as
// sparse matrices; the superoperator itself is never materialized.  The
// Hamiltonian commutator is absent throughout: the model lives in the
// interaction picture and the bare splitting generates no dissipation.
class FullLiouvillian {
 public:
  FullLiouvillian(int n_qubits, const BathParams& params);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits_; }
  const BathParams& params() const { return params_; }

  // OpenMP-parallel kernel (column-partitioned sparse-dense products).
  CMat apply(const CMat& rho) const;
  // Single-threaded twin of apply(); kept as the reference implementation
  // for tests and for the kernel benchmark.
  CMat apply_serial(const CMat& rho) const;

 private:
  struct Channel {
    double rate;
    SparseD jump;    // L
    SparseD jump_t;  // L^T
    SparseD weight;  // L^T L
  };

  int n_qubits_;
  BathParams params_;
  std::vector<Channel> channels_;
};

// Convenience factory mirroring the builder naming used across the library.
// N is capped at 12 (dense 2^N x 2^N states).
FullLiouvillian build_full_liouvillian(int n_qubits, const BathParams& params);

}  // namespace dicke
