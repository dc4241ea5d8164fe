// Timing comparison of the OpenMP generator kernel against its serial
// twin, plus the reduced-coordinate pipeline for scale.  Usage:
//   bench_liouvillian [n_qubits] [repetitions]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "dicke/bath.hpp"
#include "dicke/full_liouvillian.hpp"
#include "dicke/reduced.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

dicke::CMat random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  dicke::CMat g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      g(r, c) = dicke::Complex(gauss(rng), gauss(rng));
  dicke::CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 10;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 20;
  if (n < 2 || n > 12 || reps < 1) {
    std::fprintf(stderr, "usage: %s [n_qubits in 2..12] [reps >= 1]\n",
                 argv[0]);
    return 2;
  }

  dicke::BathParams params;
  params.gamma_c = 1.0;
  params.gamma_l = 0.5;
  params.eta = 0.9;
  params.alpha_c = 0.6;
  params.alpha_l = 0.2;

  const dicke::FullLiouvillian liou(n, params);
  const dicke::CMat rho = random_hermitian(liou.dim(), 41);

  // Warm-up plus agreement check, so the benchmark cannot silently compare
  // two kernels that drifted apart.
  const dicke::CMat a = liou.apply(rho);
  const dicke::CMat b = liou.apply_serial(rho);
  const double dev = (a - b).cwiseAbs().maxCoeff();
  std::printf("kernel agreement (max abs): %.3e\n", dev);

  auto start = Clock::now();
  for (int r = 0; r < reps; ++r) {
    volatile double sink = liou.apply(rho)(0, 0).real();
    (void)sink;
  }
  const double t_parallel = seconds_since(start) / reps;

  start = Clock::now();
  for (int r = 0; r < reps; ++r) {
    volatile double sink = liou.apply_serial(rho)(0, 0).real();
    (void)sink;
  }
  const double t_serial = seconds_since(start) / reps;

  std::printf("dense apply, N=%d (dim %lld): parallel %.3f ms, serial %.3f "
              "ms, speedup %.2fx\n",
              n, static_cast<long long>(liou.dim()), 1e3 * t_parallel,
              1e3 * t_serial, t_serial / t_parallel);

  start = Clock::now();
  const dicke::ReducedBackend backend(n);
  const dicke::Mat gen = backend.generator(params);
  const double t_build = seconds_since(start);
  start = Clock::now();
  const dicke::Vec p = backend.steady_state(gen);
  const double t_solve = seconds_since(start);
  std::printf("reduced backend, dim %d: build %.3f ms, steady solve %.3f ms "
              "(trace %.6f)\n",
              backend.dim(), 1e3 * t_build, 1e3 * t_solve, backend.trace(p));
  return 0;
}
