#include "dicke/schur.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "dicke/errors.hpp"
#include "dicke/sectors.hpp"

namespace dicke {

SchurTransform::SchurTransform(int n_qubits, Mat matrix,
                               std::vector<SchurLabel> labels)
    : n_qubits_(n_qubits),
      matrix_(std::move(matrix)),
      labels_(std::move(labels)) {
  family_start_.assign(n_qubits_ + 1, -1);
  for (std::size_t c = 0; c < labels_.size(); ++c) {
    const int tj = labels_[c].twice_j;
    if (family_start_[tj] < 0) family_start_[tj] = static_cast<int>(c);
  }
}

int SchurTransform::family_start(int twice_j) const {
  if (twice_j < 0 || twice_j > n_qubits_ || family_start_[twice_j] < 0)
    throw DomainError("SchurTransform: no such j for this N");
  return family_start_[twice_j];
}

int SchurTransform::column(int twice_j, int sigma, int twice_m) const {
  const int start = family_start(twice_j);
  const int dim = twice_j + 1;
  const auto nu = static_cast<int>(sector_multiplicity(n_qubits_, twice_j));
  if (sigma < 1 || sigma > nu)
    throw DomainError("SchurTransform: sigma out of range");
  if (twice_m < -twice_j || twice_m > twice_j || (twice_m + twice_j) % 2 != 0)
    throw DomainError("SchurTransform: m out of range");
  return start + (sigma - 1) * dim + (twice_m + twice_j) / 2;
}

namespace {

// One spin-j multiplet under construction: 2^n x (2j+1) matrix whose columns
// are |j, m> for m = -j..j expressed in the n-qubit product basis.
struct Multiplet {
  int twice_j;
  Mat block;
};

}  // namespace

SchurTransform schur_transform(int n_qubits) {
  if (n_qubits < 1) throw DomainError("schur_transform: need at least one qubit");
  if (n_qubits > 12)
    throw ResourceError("schur_transform: dense construction capped at N = 12");

  // Seed with the single qubit: |1/2,-1/2> = |0>, |1/2,+1/2> = |1>.
  std::vector<Multiplet> blocks;
  blocks.push_back({1, Mat::Identity(2, 2)});

  for (int n = 2; n <= n_qubits; ++n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    const Eigen::Index dold = dim / 2;
    // Children grouped by total spin; within one j the parents' encounter
    // order (j' descending, sigma' ascending) fixes the sigma labels.
    std::map<int, std::vector<Mat>, std::greater<int>> children;
    for (const Multiplet& parent : blocks) {
      const int tj = parent.twice_j;
      const double j1 = tj / 2.0;
      const Mat& B = parent.block;

      // Couple up to J = j1 + 1/2.  The new qubit sits in the most
      // significant bit: rows [dold, dim) carry the |1> component.
      {
        const int tJ = tj + 1;
        Mat Bu = Mat::Zero(dim, tJ + 1);
        for (int col = 0; col <= tJ; ++col) {
          const double M = -tJ / 2.0 + col;
          const double cu = (j1 + M + 0.5) / (2.0 * j1 + 1.0);
          const double cd = (j1 - M + 0.5) / (2.0 * j1 + 1.0);
          const int ci_up = static_cast<int>(std::lround(M - 0.5 + j1));
          const int ci_dn = static_cast<int>(std::lround(M + 0.5 + j1));
          if (cu > 0.0 && ci_up >= 0 && ci_up <= tj)
            Bu.bottomRows(dold).col(col) += std::sqrt(cu) * B.col(ci_up);
          if (cd > 0.0 && ci_dn >= 0 && ci_dn <= tj)
            Bu.topRows(dold).col(col) += std::sqrt(cd) * B.col(ci_dn);
        }
        children[tJ].push_back(std::move(Bu));
      }

      // Couple down to J = j1 - 1/2 (absent for the doublet parent).
      if (tj >= 1) {
        const int tJ = tj - 1;
        Mat Bd = Mat::Zero(dim, tJ + 1);
        for (int col = 0; col <= tJ; ++col) {
          const double M = -tJ / 2.0 + col;
          const double cu = (j1 - M + 0.5) / (2.0 * j1 + 1.0);
          const double cd = (j1 + M + 0.5) / (2.0 * j1 + 1.0);
          const int ci_up = static_cast<int>(std::lround(M - 0.5 + j1));
          const int ci_dn = static_cast<int>(std::lround(M + 0.5 + j1));
          if (cu > 0.0 && ci_up >= 0 && ci_up <= tj)
            Bd.bottomRows(dold).col(col) -= std::sqrt(cu) * B.col(ci_up);
          if (cd > 0.0 && ci_dn >= 0 && ci_dn <= tj)
            Bd.topRows(dold).col(col) += std::sqrt(cd) * B.col(ci_dn);
        }
        children[tJ].push_back(std::move(Bd));
      }
    }

    blocks.clear();
    for (auto& [tj, group] : children)
      for (Mat& child : group) blocks.push_back({tj, std::move(child)});
  }

  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Mat U(dim, dim);
  std::vector<SchurLabel> labels;
  labels.reserve(dim);
  int sigma_counter = -1;
  int prev_tj = -1;
  Eigen::Index col = 0;
  for (const Multiplet& mult : blocks) {
    if (mult.twice_j != prev_tj) {
      prev_tj = mult.twice_j;
      sigma_counter = 0;
    }
    ++sigma_counter;
    for (int l = 0; l <= mult.twice_j; ++l, ++col) {
      U.col(col) = mult.block.col(l);
      labels.push_back({mult.twice_j, sigma_counter, -mult.twice_j + 2 * l});
    }
  }
  return SchurTransform(n_qubits, std::move(U), std::move(labels));
}

}  // namespace dicke
