#include "dicke/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "dicke/errors.hpp"
#include "dicke/integrate.hpp"

namespace dicke {

namespace {

// p_sym of a density matrix that is h away along the flow (h may be
// negative; the window is far too short for the backward leg to lose
// accuracy).
double bright_weight_at(const FullLiouvillian& liou, const CMat& rho,
                        double h) {
  const double sign = h < 0.0 ? -1.0 : 1.0;
  const auto deriv = [&liou, sign](const CMat& r) {
    return CMat(sign * liou.apply(r));
  };
  const CMat shifted = integrate_adaptive(deriv, rho, 0.0, std::abs(h));
  double p = 0.0;
  for (const double q : bright_populations(shifted)) p += q;
  return p;
}

}  // namespace

LeakageReport leakage_functional(const FullState& state,
                                 const BathParams& params) {
  params.validate();
  const int n = state.n_qubits();
  if (n > 10)
    throw ResourceError("leakage_functional: dense evaluation capped at N = 10");
  state.validate();

  LeakageReport rep;
  const std::vector<double> pops = bright_populations(state.rho);
  for (const double q : pops) rep.p_sym += q;
  if (rep.p_sym < 1e-12) {
    rep.degenerate = true;
    return rep;
  }

  for (int k = 0; k <= n; ++k) {
    const double w = pops[k] / rep.p_sym;
    rep.mean_k += w * k;
    rep.mean_k2 += w * k * k;
    rep.mean_h += w * (n - k);
    rep.mean_h2 += w * (n - k) * (n - k);
  }

  const double n_l = params.n_l();
  const double prefactor = (1.0 - params.eta) * params.gamma_l * rep.p_sym / n;
  rep.lambda_lower = prefactor * (n_l + 1.0) * (rep.mean_k2 - rep.mean_k);
  rep.lambda_raise = prefactor * n_l * (rep.mean_h2 - rep.mean_h);
  rep.lambda_formula = rep.lambda_lower + rep.lambda_raise;

  // -d p_sym / dt by centered differences at h and h/2, combined by one
  // Richardson step.  The step is set against the fastest channel rate.
  const double rate_max =
      std::max(params.eta * params.gamma_c * (params.n_c() + 1.0),
               (1.0 - params.eta) * params.gamma_l * (n_l + 1.0));
  if (rate_max > 0.0) {
    const FullLiouvillian liou(n, params);
    const double h = 1e-4 / rate_max;
    const auto centered = [&](double step) {
      return (bright_weight_at(liou, state.rho, -step) -
              bright_weight_at(liou, state.rho, step)) /
             (2.0 * step);
    };
    const double d_h = centered(h);
    const double d_half = centered(0.5 * h);
    rep.lambda_numeric = (4.0 * d_half - d_h) / 3.0;
  }
  return rep;
}

JensenCheck jensen_bound_check(const FullState& state) {
  const int n = state.n_qubits();
  const std::vector<double> pops = bright_populations(state.rho);
  double p_sym = 0.0;
  for (const double q : pops) p_sym += q;
  if (p_sym <= 0.0)
    throw DomainError("jensen_bound_check: no bright-sector weight");

  double mean_k = 0.0, mean_k2 = 0.0, mean_h = 0.0, mean_h2 = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = pops[k] / p_sym;
    mean_k += w * k;
    mean_k2 += w * k * k;
    mean_h += w * (n - k);
    mean_h2 += w * (n - k) * (n - k);
  }

  JensenCheck check;
  check.k_lhs = mean_k2 - mean_k;
  check.k_rhs = mean_k * (mean_k - 1.0);
  check.h_lhs = mean_h2 - mean_h;
  check.h_rhs = mean_h * (mean_h - 1.0);
  check.holds = check.k_lhs >= check.k_rhs - 1e-12 &&
                check.h_lhs >= check.h_rhs - 1e-12;
  return check;
}

double free_space_kernel(double x, double alpha_angle) {
  if (!(x > 0.0))
    throw DomainError("free_space_kernel: defined for x > 0 only");
  const double c2 = std::cos(alpha_angle) * std::cos(alpha_angle);

  // f(x) = cos x / x^2 - sin x / x^3.  Below x ~ 0.1 the two terms cancel
  // to O(1) and the direct form loses digits, so switch to the series
  // sum_k (-1)^k 2k x^(2k-2) / (2k+1)!.
  double f;
  if (x < 0.1) {
    f = 0.0;
    double term = -1.0 / 3.0;  // k = 1
    int k = 1;
    while (std::abs(term) > 1e-18) {
      f += term;
      ++k;
      term *= -x * x * (2.0 * k) / ((2.0 * k - 2.0) * (2.0 * k) *
                                    (2.0 * k + 1.0));
    }
  } else {
    f = std::cos(x) / (x * x) - std::sin(x) / (x * x * x);
  }
  const double sinc = x < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return 1.5 * ((1.0 - 3.0 * c2) * f + (1.0 - c2) * sinc);
}

void SweepGrid::validate() const {
  if (alpha_c.size() < 5 || alpha_l.size() < 5)
    throw ValidationError("SweepGrid: need at least a 5 x 5 grid");
  if (value.rows() != static_cast<Eigen::Index>(alpha_c.size()) ||
      value.cols() != static_cast<Eigen::Index>(alpha_l.size()))
    throw ValidationError("SweepGrid: value table does not match the axes");
  for (std::size_t i = 1; i < alpha_c.size(); ++i)
    if (!(alpha_c[i] > alpha_c[i - 1]))
      throw ValidationError("SweepGrid: alpha_c axis must increase strictly");
  for (std::size_t i = 1; i < alpha_l.size(); ++i)
    if (!(alpha_l[i] > alpha_l[i - 1]))
      throw ValidationError("SweepGrid: alpha_l axis must increase strictly");
}

namespace {

// Half-max extent of a 1-d profile around index `peak`, on linear
// interpolation; each side clamps to the axis end when the profile never
// drops below half maximum.
double half_max_width(const std::vector<double>& axis, const Vec& profile,
                      Eigen::Index peak) {
  const double half = 0.5 * profile[peak];
  double left = axis.front();
  for (Eigen::Index i = peak; i > 0; --i) {
    const double hi = profile[i - 1], lo = profile[i];
    if (hi < half) {
      const double s = (half - hi) / (lo - hi);
      left = axis[i - 1] + s * (axis[i] - axis[i - 1]);
      break;
    }
  }
  double right = axis.back();
  for (Eigen::Index i = peak; i + 1 < profile.size(); ++i) {
    const double hi = profile[i + 1], lo = profile[i];
    if (hi < half) {
      const double s = (half - hi) / (lo - hi);
      right = axis[i + 1] - s * (axis[i + 1] - axis[i]);
      break;
    }
  }
  return right - left;
}

}  // namespace

LobeDescriptor activation_lobe(const SweepGrid& grid) {
  grid.validate();

  LobeDescriptor lobe;
  Eigen::Index ic = 0, il = 0;
  lobe.peak = grid.value.maxCoeff(&ic, &il);
  if (grid.value.cwiseAbs().maxCoeff() == 0.0) {
    lobe.empty = true;
    return lobe;
  }
  lobe.alpha_c_star = grid.alpha_c[ic];
  lobe.alpha_l_star = grid.alpha_l[il];
  lobe.interior = ic > 0 && ic + 1 < grid.value.rows() && il > 0 &&
                  il + 1 < grid.value.cols();
  lobe.width_alpha_c = half_max_width(grid.alpha_c, grid.value.col(il), ic);
  lobe.width_alpha_l =
      half_max_width(grid.alpha_l, grid.value.row(ic).transpose(), il);
  return lobe;
}

}  // namespace dicke
