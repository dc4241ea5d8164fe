#include "dicke/ergotropy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "dicke/errors.hpp"
#include "dicke/sectors.hpp"
#include "dicke/steady.hpp"

namespace dicke {

std::uint64_t EnergyLevels::level_multiplicity(int k) const {
  return binomial(n_qubits, k);
}

double passive_energy(Spectrum spectrum, int n_qubits) {
  for (auto& [value, count] : spectrum)
    if (value < 0.0) value = 0.0;
  std::sort(spectrum.begin(), spectrum.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  double e_passive = 0.0;
  int level = 0;
  std::uint64_t capacity = binomial(n_qubits, 0);
  for (auto [value, count] : spectrum) {
    if (value == 0.0) break;  // zeros contribute nothing at any level
    while (count > 0) {
      if (capacity == 0) {
        ++level;
        if (level > n_qubits)
          throw ValidationError("passive_energy: spectrum larger than 2^N");
        capacity = binomial(n_qubits, level);
        continue;
      }
      const std::uint64_t take = std::min(count, capacity);
      e_passive += value * static_cast<double>(take) * level;
      capacity -= take;
      count -= take;
    }
  }
  return e_passive;
}

double energy(const FullState& state) {
  double e = 0.0;
  for (Eigen::Index x = 0; x < state.rho.rows(); ++x)
    e += std::popcount(static_cast<std::uint64_t>(x)) *
         state.rho(x, x).real();
  return e;
}

double energy(const BlockState& state) {
  // Level of rung l in block j is k = l + (N/2 - j); degeneracy rides on
  // tr chi_j alone.
  double e = 0.0;
  for (const Block& b : state.blocks) {
    const int k0 = (state.n_qubits - b.twice_j) / 2;
    for (int l = 0; l <= b.twice_j; ++l)
      e += b.weight * b.ladder[l] * (k0 + l);
  }
  return e;
}

namespace {

Spectrum full_spectrum(const FullState& state) {
  Eigen::SelfAdjointEigenSolver<CMat> es(state.rho, Eigen::EigenvaluesOnly);
  Spectrum spec;
  spec.reserve(state.rho.rows());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    spec.emplace_back(es.eigenvalues()[i], 1);
  return spec;
}

Spectrum block_spectrum(const BlockState& state) {
  Spectrum spec;
  for (const Block& b : state.blocks) {
    if (b.weight <= 0.0) continue;
    if (b.isotropic()) {
      const double per_copy = b.weight / static_cast<double>(b.multiplicity);
      for (int l = 0; l <= b.twice_j; ++l)
        spec.emplace_back(per_copy * b.ladder[l], b.multiplicity);
    } else {
      Eigen::SelfAdjointEigenSolver<CMat> es(b.chi, Eigen::EigenvaluesOnly);
      for (Eigen::Index s = 0; s < es.eigenvalues().size(); ++s)
        for (int l = 0; l <= b.twice_j; ++l)
          spec.emplace_back(es.eigenvalues()[s] * b.ladder[l], 1);
    }
  }
  return spec;
}

ErgotropyReport make_report(double e, double e_passive) {
  ErgotropyReport r;
  r.energy = e;
  r.passive_energy = e_passive;
  r.ergotropy = e - e_passive;
  r.residual = e_passive;
  return r;
}

}  // namespace

ErgotropyReport ergotropy(const FullState& state) {
  return make_report(energy(state),
                     passive_energy(full_spectrum(state), state.n_qubits()));
}

ErgotropyReport ergotropy(const BlockState& state) {
  return make_report(energy(state),
                     passive_energy(block_spectrum(state), state.n_qubits));
}

namespace {

// T = sum_{l=0..N} alpha^l and V = sum_{l=0..N-1} (N-l) alpha^l evaluated by
// Horner recurrences; both are benign for alpha in [0, 1].
void charging_sums(int n, double alpha, double& t_sum, double& v_sum) {
  t_sum = 1.0;
  v_sum = 0.0;
  double pow_a = 1.0;
  for (int l = 0; l < n; ++l) {
    v_sum += (n - l) * pow_a;
    pow_a *= alpha;
    t_sum += pow_a;
  }
}

}  // namespace

double ergotropy_closed_form(int n_qubits, double alpha_c, bool allow_limit) {
  if (n_qubits < 1) throw DomainError("ergotropy_closed_form: N must be >= 1");
  if (alpha_c <= 0.0 || alpha_c >= 1.0) {
    if (!allow_limit || alpha_c < 0.0 || alpha_c > 1.0)
      throw DomainError(
          "ergotropy_closed_form: alpha_c must lie in (0, 1); the endpoint "
          "limits require allow_limit");
    if (alpha_c == 0.0) return 0.0;
    return n_qubits / 2.0 + 1.0 / (n_qubits + 1.0) - 1.0;
  }
  double t, v;
  charging_sums(n_qubits, alpha_c, t, v);
  return (n_qubits - 1.0) + (1.0 - v) / t;
}

double energy_closed_form(int n_qubits, double alpha_c) {
  if (n_qubits < 1) throw DomainError("energy_closed_form: N must be >= 1");
  if (alpha_c < 0.0 || alpha_c > 1.0)
    throw DomainError("energy_closed_form: alpha_c must lie in [0, 1]");
  if (alpha_c == 1.0) return n_qubits / 2.0;
  double t, v;
  charging_sums(n_qubits, alpha_c, t, v);
  return n_qubits - v / t;
}

double residual_closed_form(int n_qubits, double alpha_c) {
  if (n_qubits < 1) throw DomainError("residual_closed_form: N must be >= 1");
  if (alpha_c < 0.0 || alpha_c > 1.0)
    throw DomainError("residual_closed_form: alpha_c must lie in [0, 1]");
  if (alpha_c == 1.0) return 1.0 - 1.0 / (n_qubits + 1.0);
  double t, v;
  charging_sums(n_qubits, alpha_c, t, v);
  return 1.0 - 1.0 / t;
}

BalanceReport ergotropic_balance(double q, const CMat& unitary,
                                 const BathParams& params,
                                 const SchurTransform& schur) {
  if (schur.n_qubits() > 6)
    throw ResourceError("ergotropic_balance: capped at N = 6");
  const Eigen::Index dim = schur.matrix().rows();
  if (unitary.rows() != dim || unitary.cols() != dim)
    throw ValidationError("ergotropic_balance: unitary dimension mismatch");
  if ((unitary * unitary.adjoint() - CMat::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw ValidationError("ergotropic_balance: input is not unitary");
  params.validate();

  const int n = schur.n_qubits();
  const FullState rho_q = FullState::product_gibbs(n, q);
  FullState rotated{unitary * rho_q.rho * unitary.adjoint()};
  rotated.rho = 0.5 * (rotated.rho + rotated.rho.adjoint().eval());

  const double prep_cost = energy(rotated) - energy(rho_q);

  const auto steady_report = [&](const FullState& seed) {
    const BlockState blocks = collective_steady_state(
        project_to_blocks(seed, schur), params.alpha_c);
    return ergotropy(blocks);
  };

  BalanceReport rep;
  rep.prep_cost = prep_cost;
  rep.w_rotated = steady_report(rotated).ergotropy;
  rep.w_unrotated = steady_report(rho_q).ergotropy;
  rep.delta_w = (rep.w_rotated - prep_cost) - rep.w_unrotated;
  rep.delta_w_initial_final = rep.w_rotated - ergotropy(rotated).ergotropy;
  return rep;
}

CMat haar_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMat> qr(g);
  CMat qmat = qr.householderQ();
  const CMat rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex d = rmat(c, c);
    qmat.col(c) *= d / std::abs(d);
  }
  return qmat;
}

}  // namespace dicke
