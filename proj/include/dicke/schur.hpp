#pragma once

#include <vector>

#include "dicke/types.hpp"

namespace dicke {

// Label of one column of the Schur transform: the basis state |j, m, sigma>.
// sigma is 1-based and counts copies of the spin-j irrep.
struct SchurLabel {
  int twice_j = 0;
  int sigma = 1;
  int twice_m = 0;
};

// Change of basis from the computational product basis (qubit 1 = most
// significant bit, bit value 1 = excited) to the angular-momentum basis
// |j, m, sigma>.  Columns are ordered j descending, then sigma ascending,
// then m ascending from -j to +j, so each (j, sigma) multiplet occupies a
// contiguous block of 2j+1 columns.  The matrix is real orthogonal: all
// coupling coefficients in the qubit-by-qubit construction are real.
class SchurTransform {
 public:
  SchurTransform(int n_qubits, Mat matrix, std::vector<SchurLabel> labels);

  int n_qubits() const { return n_qubits_; }
  const Mat& matrix() const { return matrix_; }
  const std::vector<SchurLabel>& labels() const { return labels_; }

  // First column of the (j, sigma=1) block; blocks for fixed j are contiguous.
  int family_start(int twice_j) const;
  // Column index of |j, m, sigma>; throws DomainError for labels that do not
  // exist at this N.
  int column(int twice_j, int sigma, int twice_m) const;

 private:
  int n_qubits_;
  Mat matrix_;
  std::vector<SchurLabel> labels_;
  std::vector<int> family_start_;  // indexed by twice_j
};

// Builds the transform by coupling one qubit at a time (each new qubit is
// prepended as the most significant bit).  Dense 2^N x 2^N storage caps the
// construction at N <= 12; throws ResourceError beyond that.
SchurTransform schur_transform(int n_qubits);

}  // namespace dicke
