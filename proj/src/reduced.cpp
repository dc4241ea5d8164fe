#include "dicke/reduced.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <cmath>

#include "dicke/errors.hpp"
#include "dicke/schur.hpp"
#include "dicke/sectors.hpp"

namespace dicke {

ReducedBackend::ReducedBackend(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 20)
    throw ResourceError("ReducedBackend: N capped at 20");
  for (const SectorInfo& s : enumerate_sectors(n_qubits)) {
    tjs_.push_back(s.twice_j);
    nus_.push_back(s.multiplicity);
    offsets_.push_back(dim_);
    dim_ += s.dim() * s.dim();
  }

  // Collective channel, unit rate.  Down: gain from the (m+1, m'+1) rung
  // with amplitude sqrt(A_{m+1} A'_{m'+1}); up mirrors it one rung lower.
  coll_dn_ = Mat::Zero(dim_, dim_);
  coll_up_ = Mat::Zero(dim_, dim_);
  for (const int tj : tjs_) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      for (int tmp = -tj; tmp <= tj; tmp += 2) {
        const int r = index(tj, tm, tmp);
        const double am = lowering_factor(tj, tm);
        const double apm = lowering_factor(tj, tmp);
        const double am1 = lowering_factor(tj, tm + 2);
        const double apm1 = lowering_factor(tj, tmp + 2);
        coll_dn_(r, r) -= 0.5 * (am + apm);
        coll_up_(r, r) -= 0.5 * (am1 + apm1);
        if (tm + 2 <= tj && tmp + 2 <= tj)
          coll_dn_(r, index(tj, tm + 2, tmp + 2)) += std::sqrt(am1 * apm1);
        if (tm - 2 >= -tj && tmp - 2 >= -tj)
          coll_up_(r, index(tj, tm - 2, tmp - 2)) += std::sqrt(am * apm);
      }
    }
  }
}

std::uint64_t ReducedBackend::multiplicity(int twice_j) const {
  for (std::size_t i = 0; i < tjs_.size(); ++i)
    if (tjs_[i] == twice_j) return nus_[i];
  throw DomainError("ReducedBackend: no such j");
}

int ReducedBackend::block_offset(int twice_j) const {
  for (std::size_t i = 0; i < tjs_.size(); ++i)
    if (tjs_[i] == twice_j) return offsets_[i];
  throw DomainError("ReducedBackend: no such j");
}

int ReducedBackend::index(int twice_j, int twice_m, int twice_mp) const {
  const int d = twice_j + 1;
  return block_offset(twice_j) + ((twice_m + twice_j) / 2) * d +
         (twice_mp + twice_j) / 2;
}

// Local channel via the spin-basis matrix of one site's lowering operator.
// W(a, b) = <a| s_-^(1) |b> in the |j,m,sigma> basis.  The reduced sandwich
// for the whole sum over sites is
//   (sum_i s_-^i rho s_+^i)^J_{ab} =
//     N/nu_J sum_{tau, sigma} sum_{j} W[(J,tau,a),(j,sigma,m)]
//                                     W[(J,tau,b),(j,sigma,n)] p^j_{mn},
// i.e. N times an average over the degeneracy index of site 1's
// contribution — all sites contribute identically on permutation-invariant
// states.  For fixed (tau, sigma) the coefficient block is the Kronecker
// square of the (2J+1) x (2j+1) slice of W, and only |J - j| <= 1 couples.
void ReducedBackend::build_local_parts() const {
  if (locals_ready_) return;
  if (n_ > 12)
    throw ResourceError(
        "ReducedBackend: the local channel needs the spin-basis transform, "
        "which is capped at N = 12");
  const SchurTransform schur = schur_transform(n_);
  const Mat& u = schur.matrix();
  const Eigen::Index full = u.rows();

  // Rows of U gathered through sigma_-^(1): SU = s_-^(1) U in the product
  // basis, with qubit 1 as the most significant bit.
  const Eigen::Index bit = full / 2;
  Mat su = Mat::Zero(full, full);
  for (Eigen::Index x = bit; x < full; ++x) su.row(x ^ bit) = u.row(x);
  const Mat w = u.transpose() * su;

  loc_dn_ = Mat::Zero(dim_, dim_);
  loc_up_ = Mat::Zero(dim_, dim_);
  for (std::size_t bi = 0; bi < tjs_.size(); ++bi) {
    const int tJ = tjs_[bi];
    const int dJ = tJ + 1;
    const auto nJ = static_cast<Eigen::Index>(nus_[bi]);
    const int colJ = schur.family_start(tJ);
    for (std::size_t bj = 0; bj < tjs_.size(); ++bj) {
      const int tj = tjs_[bj];
      if (std::abs(tJ - tj) > 2) continue;
      const int dj = tj + 1;
      const auto nj = static_cast<Eigen::Index>(nus_[bj]);
      const int colj = schur.family_start(tj);

      Mat acc_dn = Mat::Zero(dJ * dJ, dj * dj);
      Mat acc_up = Mat::Zero(dJ * dJ, dj * dj);
      for (Eigen::Index tau = 0; tau < nJ; ++tau) {
        for (Eigen::Index sig = 0; sig < nj; ++sig) {
          const Mat slice_dn =
              w.block(colJ + tau * dJ, colj + sig * dj, dJ, dj);
          const Mat slice_up =
              w.block(colj + sig * dj, colJ + tau * dJ, dj, dJ)
                  .transpose()
                  .eval();
          for (int a = 0; a < dJ; ++a)
            for (int b = 0; b < dJ; ++b)
              for (int m = 0; m < dj; ++m)
                for (int nn = 0; nn < dj; ++nn) {
                  acc_dn(a * dJ + b, m * dj + nn) +=
                      slice_dn(a, m) * slice_dn(b, nn);
                  acc_up(a * dJ + b, m * dj + nn) +=
                      slice_up(a, m) * slice_up(b, nn);
                }
        }
      }
      const double scale = static_cast<double>(n_) / static_cast<double>(nJ);
      loc_dn_.block(offsets_[bi], offsets_[bj], dJ * dJ, dj * dj) +=
          scale * acc_dn;
      loc_up_.block(offsets_[bi], offsets_[bj], dJ * dJ, dj * dj) +=
          scale * acc_up;
    }
  }

  // Anticommutator halves: the summed number operators are diagonal in the
  // spin basis with K = N/2 + m excitations and H = N/2 - m holes.
  for (const int tj : tjs_) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      for (int tmp = -tj; tmp <= tj; tmp += 2) {
        const int r = index(tj, tm, tmp);
        loc_dn_(r, r) -= 0.25 * ((n_ + tm) + (n_ + tmp));
        loc_up_(r, r) -= 0.25 * ((n_ - tm) + (n_ - tmp));
      }
    }
  }
  locals_ready_ = true;
}

Mat ReducedBackend::generator(const BathParams& params) const {
  params.validate();
  Mat g = Mat::Zero(dim_, dim_);
  if (params.eta > 0.0 && params.gamma_c > 0.0) {
    const double nc = params.n_c();
    g += params.eta * params.gamma_c *
         ((nc + 1.0) * coll_dn_ + nc * coll_up_);
  }
  if (params.eta < 1.0 && params.gamma_l > 0.0) {
    build_local_parts();
    const double nl = params.n_l();
    g += (1.0 - params.eta) * params.gamma_l *
         ((nl + 1.0) * loc_dn_ + nl * loc_up_);
  }
  return g;
}

Vec ReducedBackend::ground() const {
  Vec p = Vec::Zero(dim_);
  p[index(n_, -n_, -n_)] = 1.0;
  return p;
}

Vec ReducedBackend::product_gibbs(double q) const {
  if (q < 0.0 || q > 1.0)
    throw DomainError("ReducedBackend::product_gibbs: q must lie in [0, 1]");
  Vec p = Vec::Zero(dim_);
  const double norm = std::pow(1.0 + q, -n_);
  for (const int tj : tjs_)
    for (int tm = -tj; tm <= tj; tm += 2)
      p[index(tj, tm, tm)] = norm * std::pow(q, (n_ + tm) / 2);
  return p;
}

Vec ReducedBackend::from_block_state(const BlockState& state) const {
  if (state.n_qubits != n_)
    throw ValidationError("ReducedBackend: qubit counts differ");
  Vec p = Vec::Zero(dim_);
  for (const Block& b : state.blocks) {
    double per_copy = b.weight / static_cast<double>(b.multiplicity);
    if (!b.isotropic()) {
      const CMat& chi = b.chi;
      const double off =
          (chi - (chi.trace() / static_cast<double>(chi.rows())) *
                     CMat::Identity(chi.rows(), chi.cols()))
              .cwiseAbs()
              .maxCoeff();
      if (off > 1e-10)
        throw ValidationError(
            "ReducedBackend: block state is not permutation invariant "
            "(chi is not proportional to the identity)");
      per_copy = chi.trace().real() / static_cast<double>(chi.rows());
    }
    for (int l = 0; l <= b.twice_j; ++l)
      p[index(b.twice_j, -b.twice_j + 2 * l, -b.twice_j + 2 * l)] =
          per_copy * b.ladder[l];
  }
  return p;
}

Vec ReducedBackend::trace_functional() const {
  Vec t = Vec::Zero(dim_);
  for (std::size_t bi = 0; bi < tjs_.size(); ++bi) {
    const int tj = tjs_[bi];
    for (int tm = -tj; tm <= tj; tm += 2)
      t[index(tj, tm, tm)] = static_cast<double>(nus_[bi]);
  }
  return t;
}

double ReducedBackend::energy(const Vec& p) const {
  double e = 0.0;
  for (std::size_t bi = 0; bi < tjs_.size(); ++bi) {
    const int tj = tjs_[bi];
    const double nu = static_cast<double>(nus_[bi]);
    for (int tm = -tj; tm <= tj; tm += 2)
      e += nu * 0.5 * (n_ + tm) * p[index(tj, tm, tm)];
  }
  return e;
}

double ReducedBackend::bright_weight(const Vec& p) const {
  double w = 0.0;
  for (int tm = -n_; tm <= n_; tm += 2) w += p[index(n_, tm, tm)];
  return w;
}

ErgotropyReport ReducedBackend::ergotropy(const Vec& p) const {
  Spectrum spec;
  for (std::size_t bi = 0; bi < tjs_.size(); ++bi) {
    const int tj = tjs_[bi];
    const int d = tj + 1;
    Mat block(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        block(a, b) = p[offsets_[bi] + a * d + b];
    block = 0.5 * (block + block.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Mat> es(block, Eigen::EigenvaluesOnly);
    for (int s = 0; s < d; ++s)
      spec.emplace_back(es.eigenvalues()[s], nus_[bi]);
  }
  ErgotropyReport rep;
  rep.energy = energy(p);
  rep.passive_energy = passive_energy(std::move(spec), n_);
  rep.ergotropy = rep.energy - rep.passive_energy;
  rep.residual = rep.passive_energy;
  return rep;
}

Vec ReducedBackend::steady_state(const Mat& generator,
                                 double residual_tol) const {
  Mat stacked(dim_ + 1, dim_);
  stacked.topRows(dim_) = generator;
  stacked.row(dim_) = trace_functional().transpose();
  Vec rhs = Vec::Zero(dim_ + 1);
  rhs[dim_] = 1.0;
  Vec p = stacked.colPivHouseholderQr().solve(rhs);
  const double tr = trace_functional().dot(p);
  if (std::abs(tr) > 1e-12) p /= tr;
  const double residual = (generator * p).cwiseAbs().maxCoeff();
  if (residual > residual_tol)
    throw ConvergenceError("ReducedBackend::steady_state: residual too large",
                           residual);
  return p;
}

ReducedPropagator::ReducedPropagator(const Mat& generator, Vec p0,
                                     const IntegrateOptions& options)
    : gen_(generator), p0_(std::move(p0)), opt_(options) {
  Eigen::EigenSolver<Mat> es(gen_);
  if (es.info() == Eigen::Success) {
    vectors_ = es.eigenvectors();
    values_ = es.eigenvalues();
    Eigen::PartialPivLU<CMat> lu(vectors_);
    coeffs_ = lu.solve(p0_.cast<Complex>());
    const double recon_err =
        (vectors_ * coeffs_ - p0_.cast<Complex>()).cwiseAbs().maxCoeff();
    use_eig_ = recon_err < 1e-8 * std::max(1.0, p0_.cwiseAbs().maxCoeff());
  }
  p_cache_ = p0_;
}

Vec ReducedPropagator::at(double t) const {
  if (t <= 0.0) return p0_;
  if (use_eig_) {
    const CVec scaled =
        (values_.array() * t).exp().matrix().asDiagonal() * coeffs_;
    return (vectors_ * scaled).real();
  }
  if (t < t_cache_) {
    t_cache_ = 0.0;
    p_cache_ = p0_;
  }
  const auto deriv = [this](const Vec& y) -> Vec { return gen_ * y; };
  p_cache_ = integrate_adaptive(deriv, p_cache_, t_cache_, t, opt_);
  t_cache_ = t;
  return p_cache_;
}

}  // namespace dicke
