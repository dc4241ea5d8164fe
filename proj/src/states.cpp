#include "dicke/states.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <cstdint>

#include "dicke/errors.hpp"
#include "dicke/sectors.hpp"

namespace dicke {

int FullState::n_qubits() const {
  const auto dim = rho.rows();
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  return n;
}

void FullState::validate(double tol) const {
  if (rho.rows() != rho.cols() || rho.rows() < 2)
    throw ValidationError("FullState: density matrix must be square");
  if ((Eigen::Index(1) << n_qubits()) != rho.rows())
    throw ValidationError("FullState: dimension must be a power of two");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("FullState: density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-12)
    throw ValidationError("FullState: density matrix is not unit trace");
  Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw ValidationError("FullState: density matrix is not positive semidefinite");
}

FullState FullState::ground(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  CMat rho = CMat::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return {rho};
}

FullState FullState::all_excited(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  CMat rho = CMat::Zero(dim, dim);
  rho(dim - 1, dim - 1) = 1.0;
  return {rho};
}

FullState FullState::maximally_mixed(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  return {CMat::Identity(dim, dim) / static_cast<double>(dim)};
}

FullState FullState::product_gibbs(int n_qubits, double q) {
  if (q < 0.0 || q > 1.0)
    throw DomainError("product_gibbs: q must lie in [0, 1]");
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  CMat rho = CMat::Zero(dim, dim);
  const double norm = std::pow(1.0 + q, -n_qubits);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const int k = std::popcount(static_cast<std::uint64_t>(x));
    rho(x, x) = norm * std::pow(q, k);
  }
  return {rho};
}

CMat Block::explicit_chi() const {
  if (!isotropic()) return chi;
  if (multiplicity > 4096)
    throw ResourceError("Block: degeneracy space too large to materialize");
  const auto nu = static_cast<Eigen::Index>(multiplicity);
  return (weight / static_cast<double>(multiplicity)) * CMat::Identity(nu, nu);
}

double BlockState::total_weight() const {
  double w = 0.0;
  for (const Block& b : blocks) w += b.weight;
  return w;
}

void BlockState::validate(double tol) const {
  if (std::abs(total_weight() - 1.0) > tol)
    throw ValidationError("BlockState: block weights do not sum to 1");
  for (const Block& b : blocks) {
    if (b.ladder.size() != b.twice_j + 1)
      throw ValidationError("BlockState: ladder length must be 2j+1");
    if (std::abs(b.ladder.sum() - 1.0) > tol && b.weight > tol)
      throw ValidationError("BlockState: ladder is not normalized");
    if (!b.isotropic()) {
      if (b.chi.rows() != b.chi.cols() ||
          b.chi.rows() != static_cast<Eigen::Index>(b.multiplicity))
        throw ValidationError("BlockState: chi must be nu_j x nu_j");
      if ((b.chi - b.chi.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("BlockState: chi is not Hermitian");
      if (std::abs(b.chi.trace().real() - b.weight) > tol)
        throw ValidationError("BlockState: chi trace disagrees with weight");
      Eigen::SelfAdjointEigenSolver<CMat> es(b.chi, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -10 * tol)
        throw ValidationError("BlockState: chi is not positive semidefinite");
    }
  }
}

std::vector<Block> product_gibbs_sector_weights(int n_qubits, double q) {
  if (q < 0.0 || q > 1.0)
    throw DomainError("product_gibbs_sector_weights: q must lie in [0, 1]");
  std::vector<Block> out;
  const double norm = std::pow(1.0 + q, -n_qubits);
  for (const SectorInfo& s : enumerate_sectors(n_qubits)) {
    Block b;
    b.twice_j = s.twice_j;
    b.multiplicity = s.multiplicity;
    b.ladder = Vec::Zero(s.dim());
    // Each |j,m,sigma> carries product-state weight q^k/(1+q)^N, k = m + N/2.
    double w = 0.0;
    for (int l = 0; l < s.dim(); ++l) {
      const int k = (n_qubits - s.twice_j) / 2 + l;
      const double p = norm * std::pow(q, k);
      b.ladder[l] = p;
      w += p;
    }
    w *= static_cast<double>(s.multiplicity);
    b.weight = w;
    if (w > 0.0) b.ladder /= b.ladder.sum();
    out.push_back(std::move(b));
  }
  return out;
}

BlockState project_to_blocks(const FullState& state, const SchurTransform& schur) {
  state.validate();
  if (state.rho.rows() != schur.matrix().rows())
    throw ValidationError("project_to_blocks: state and transform dimensions differ");
  const int n = schur.n_qubits();
  const CMat in_schur = schur.matrix().transpose() * state.rho * schur.matrix();

  BlockState out;
  out.n_qubits = n;
  for (const SectorInfo& s : enumerate_sectors(n)) {
    const auto nu = static_cast<Eigen::Index>(s.multiplicity);
    const int dim = s.dim();
    const int start = schur.family_start(s.twice_j);
    Block b;
    b.twice_j = s.twice_j;
    b.multiplicity = s.multiplicity;
    b.chi = CMat::Zero(nu, nu);
    b.ladder = Vec::Zero(dim);
    for (Eigen::Index sig = 0; sig < nu; ++sig) {
      for (Eigen::Index sigp = 0; sigp < nu; ++sigp) {
        Complex acc = 0.0;
        for (int l = 0; l < dim; ++l)
          acc += in_schur(start + sig * dim + l, start + sigp * dim + l);
        b.chi(sig, sigp) = acc;
      }
      for (int l = 0; l < dim; ++l)
        b.ladder[l] += in_schur(start + sig * dim + l, start + sig * dim + l).real();
    }
    if ((b.chi - b.chi.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw ValidationError("project_to_blocks: chi came out non-Hermitian");
    b.weight = b.chi.trace().real();
    if (b.ladder.sum() > 1e-15) b.ladder /= b.ladder.sum();
    out.blocks.push_back(std::move(b));
  }
  return out;
}

CMat reconstruct_density(const BlockState& state, const SchurTransform& schur) {
  if (state.n_qubits != schur.n_qubits())
    throw ValidationError("reconstruct_density: qubit counts differ");
  const Eigen::Index dim = schur.matrix().rows();
  CMat in_schur = CMat::Zero(dim, dim);
  for (const Block& b : state.blocks) {
    const CMat chi = b.explicit_chi();
    const int d = b.twice_j + 1;
    const int start = schur.family_start(b.twice_j);
    for (Eigen::Index sig = 0; sig < chi.rows(); ++sig)
      for (Eigen::Index sigp = 0; sigp < chi.cols(); ++sigp)
        for (int l = 0; l < d; ++l)
          in_schur(start + sig * d + l, start + sigp * d + l) =
              chi(sig, sigp) * b.ladder[l];
  }
  return schur.matrix() * in_schur * schur.matrix().transpose();
}

bool is_dicke_diagonal(const FullState& state, const SchurTransform& schur,
                       double tol) {
  CMat in_schur = schur.matrix().transpose() * state.rho * schur.matrix();
  in_schur.diagonal().setZero();
  return in_schur.cwiseAbs().maxCoeff() < tol;
}

Vec symmetric_dicke_state(int n_qubits, int k) {
  if (n_qubits < 1 || n_qubits > 24)
    throw DomainError("symmetric_dicke_state: N must lie in [1, 24]");
  if (k < 0 || k > n_qubits)
    throw DomainError("symmetric_dicke_state: k must lie in [0, N]");
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  const double amp =
      1.0 / std::sqrt(static_cast<double>(binomial(n_qubits, k)));
  Vec v = Vec::Zero(dim);
  for (Eigen::Index x = 0; x < dim; ++x)
    if (std::popcount(static_cast<std::uint64_t>(x)) == k) v[x] = amp;
  return v;
}

std::vector<double> bright_populations(const CMat& rho) {
  int n = 0;
  while ((Eigen::Index(1) << n) < rho.rows()) ++n;
  if ((Eigen::Index(1) << n) != rho.rows())
    throw ValidationError("bright_populations: dimension must be a power of two");
  std::vector<double> pops(n + 1);
  for (int k = 0; k <= n; ++k) {
    const CVec d = symmetric_dicke_state(n, k).cast<Complex>();
    pops[k] = (d.adjoint() * rho * d).value().real();
  }
  return pops;
}

}  // namespace dicke
