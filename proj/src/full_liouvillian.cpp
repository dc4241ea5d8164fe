#include "dicke/full_liouvillian.hpp"

#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

SparseD sigma_minus(int n_qubits, int site) {
  if (site < 1 || site > n_qubits)
    throw DomainError("sigma_minus: site index out of range");
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  const Eigen::Index bit = Eigen::Index(1) << (n_qubits - site);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(dim / 2);
  for (Eigen::Index x = 0; x < dim; ++x)
    if (x & bit) trip.emplace_back(x ^ bit, x, 1.0);
  SparseD s(dim, dim);
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

SparseD collective_lowering(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  SparseD j(dim, dim);
  for (int i = 1; i <= n_qubits; ++i) j += sigma_minus(n_qubits, i);
  return j;
}

SparseD excitation_number(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const int k = __builtin_popcountll(static_cast<unsigned long long>(x));
    if (k > 0) trip.emplace_back(x, x, static_cast<double>(k));
  }
  SparseD op(dim, dim);
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

FullLiouvillian::FullLiouvillian(int n_qubits, const BathParams& params)
    : n_qubits_(n_qubits), params_(params) {
  params.validate();
  if (n_qubits < 1 || n_qubits > 12)
    throw ResourceError("FullLiouvillian: dense-state action capped at N = 12");

  auto add_channel = [this](double rate, const SparseD& jump) {
    if (rate <= 0.0) return;
    Channel ch;
    ch.rate = rate;
    ch.jump = jump;
    ch.jump_t = SparseD(jump.transpose());
    ch.weight = SparseD(ch.jump_t * jump);
    ch.jump.makeCompressed();
    ch.jump_t.makeCompressed();
    ch.weight.makeCompressed();
    channels_.push_back(std::move(ch));
  };

  if (params.eta > 0.0 && params.gamma_c > 0.0) {
    const SparseD jm = collective_lowering(n_qubits);
    const SparseD jp = SparseD(jm.transpose());
    add_channel(params.eta * params.gamma_c * (params.n_c() + 1.0), jm);
    add_channel(params.eta * params.gamma_c * params.n_c(), jp);
  }
  if (params.eta < 1.0 && params.gamma_l > 0.0) {
    for (int i = 1; i <= n_qubits; ++i) {
      const SparseD sm = sigma_minus(n_qubits, i);
      const SparseD sp = SparseD(sm.transpose());
      add_channel((1.0 - params.eta) * params.gamma_l * (params.n_l() + 1.0), sm);
      add_channel((1.0 - params.eta) * params.gamma_l * params.n_l(), sp);
    }
  }
}

// Hand-rolled column-partitioned kernel.  For each output column c and each
// channel: the sandwich term needs T(:,c) = (rho L^T)(:,c), a short linear
// combination of columns of rho read off the sparse pattern of L^T, followed
// by one sparse matrix-vector product; the anticommutator contributes
// K rho(:,c) and the matching row combination.  Columns are independent, so
// the loop parallelizes without synchronization.
CMat FullLiouvillian::apply(const CMat& rho) const {
  const Eigen::Index d = dim();
  if (rho.rows() != d || rho.cols() != d)
    throw ValidationError("FullLiouvillian::apply: dimension mismatch");
  CMat out = CMat::Zero(d, d);

#pragma omp parallel
  {
    CVec t(d);
#pragma omp for schedule(static)
    for (Eigen::Index c = 0; c < d; ++c) {
      for (const Channel& ch : channels_) {
        // T(:,c) = sum_k rho(:,k) L(c,k) over nonzeros of column c of L^T.
        t.setZero();
        for (SparseD::InnerIterator it(ch.jump_t, c); it; ++it)
          t += it.value() * rho.col(it.row());
        // out(:,c) += rate * L * t
        for (Eigen::Index k = 0; k < d; ++k) {
          if (t[k] == Complex(0.0)) continue;
          const Complex tk = ch.rate * t[k];
          for (SparseD::InnerIterator it(ch.jump, k); it; ++it)
            out(it.row(), c) += it.value() * tk;
        }
        // out(:,c) -= rate/2 * (K rho)(:,c)
        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex rk = rho(k, c);
          if (rk == Complex(0.0)) continue;
          const Complex w = 0.5 * ch.rate * rk;
          for (SparseD::InnerIterator it(ch.weight, k); it; ++it)
            out(it.row(), c) -= it.value() * w;
        }
        // out(:,c) -= rate/2 * (rho K)(:,c)
        for (SparseD::InnerIterator it(ch.weight, c); it; ++it)
          out.col(c) -= (0.5 * ch.rate * it.value()) * rho.col(it.row());
      }
    }
  }
  return out;
}

// Reference implementation on Eigen's stock sparse-dense products; this is a
// genuinely independent code path used to cross-check the kernel above.
CMat FullLiouvillian::apply_serial(const CMat& rho) const {
  const Eigen::Index d = dim();
  if (rho.rows() != d || rho.cols() != d)
    throw ValidationError("FullLiouvillian::apply_serial: dimension mismatch");
  CMat out = CMat::Zero(d, d);
  for (const Channel& ch : channels_) {
    const CMat sandwich = ch.jump * rho * ch.jump_t;
    const CMat anti = ch.weight * rho + rho * ch.weight;
    out += ch.rate * (sandwich - 0.5 * anti);
  }
  return out;
}

FullLiouvillian build_full_liouvillian(int n_qubits, const BathParams& params) {
  return FullLiouvillian(n_qubits, params);
}

}  // namespace dicke
