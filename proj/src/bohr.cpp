#include "dicke/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dicke/errors.hpp"
#include "dicke/sectors.hpp"

namespace dicke {

int BohrSector::twice_m_lo() const {
  return std::max(-twice_j, 2 * delta_jz - twice_jp);
}

int BohrSector::twice_m_hi() const {
  return std::min(twice_j, 2 * delta_jz + twice_jp);
}

SectorKind classify_sector(const BohrSector& sector) {
  return (sector.twice_j == sector.twice_jp && sector.delta_jz == 0)
             ? SectorKind::thermalizing
             : SectorKind::leaking;
}

namespace {

void append_delta_range(std::vector<BohrSector>& out, int tj, int tjp,
                        int sigma, int sigma_p) {
  const int dmax = (tj + tjp) / 2;
  for (int delta = -dmax; delta <= dmax; ++delta)
    out.push_back({tj, tjp, sigma, sigma_p, delta});
}

}  // namespace

std::vector<BohrSector> enumerate_bohr_sectors(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 30)
    throw ResourceError("enumerate_bohr_sectors: N capped at 30");
  std::vector<BohrSector> out;
  const auto sectors = enumerate_sectors(n_qubits);
  for (const SectorInfo& a : sectors)
    for (const SectorInfo& b : sectors)
      append_delta_range(out, a.twice_j, b.twice_j, 1, 1);
  return out;
}

std::vector<BohrSector> enumerate_bohr_sectors_sigma_resolved(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 12)
    throw ResourceError("enumerate_bohr_sectors_sigma_resolved: N capped at 12");
  std::vector<BohrSector> out;
  const auto sectors = enumerate_sectors(n_qubits);
  for (const SectorInfo& a : sectors)
    for (const SectorInfo& b : sectors)
      for (std::uint64_t s = 1; s <= a.multiplicity; ++s)
        for (std::uint64_t sp = 1; sp <= b.multiplicity; ++sp)
          append_delta_range(out, a.twice_j, b.twice_j, static_cast<int>(s),
                             static_cast<int>(sp));
  return out;
}

Mat SectorGenerator::dense() const {
  const int d = dim();
  Mat m = Mat::Zero(d, d);
  for (int l = 0; l < d; ++l) {
    m(l, l) = diag[l];
    if (l + 1 < d) {
      m(l + 1, l) = lower[l];
      m(l, l + 1) = upper[l];
    }
  }
  return m;
}

double SectorGenerator::column_sum(int l) const {
  double s = diag[l];
  if (l + 1 < dim()) s += lower[l];
  if (l > 0) s += upper[l - 1];
  return s;
}

SectorGenerator build_sector_generator(const BohrSector& sector,
                                       const BathParams& params) {
  params.validate();
  if (params.eta != 1.0)
    throw UnsupportedBackendError(
        "build_sector_generator: the block picture requires eta = 1; "
        "use the full-space backend for mixed dissipation");
  const double g = params.gamma_c;
  const double n = params.n_c();

  SectorGenerator gen;
  gen.sector = sector;
  gen.gamma = g;
  gen.occupation = n;
  const int lo = sector.twice_m_lo();
  const int hi = sector.twice_m_hi();
  if (lo > hi) throw DomainError("build_sector_generator: empty sector");
  const int d = (hi - lo) / 2 + 1;
  gen.diag.resize(d);
  gen.lower.assign(d > 0 ? d - 1 : 0, 0.0);
  gen.upper.assign(d > 0 ? d - 1 : 0, 0.0);

  for (int l = 0; l < d; ++l) {
    const int tm = lo + 2 * l;
    const int tmp = tm - 2 * sector.delta_jz;
    const double am = lowering_factor(sector.twice_j, tm);
    const double apm = lowering_factor(sector.twice_jp, tmp);
    const double am1 = lowering_factor(sector.twice_j, tm + 2);
    const double apm1 = lowering_factor(sector.twice_jp, tmp + 2);
    gen.diag[l] = -0.5 * g * ((n + 1.0) * (am + apm) + n * (am1 + apm1));
    const double cross = std::sqrt(am1 * apm1);
    if (l + 1 < d) {
      gen.upper[l] = g * (n + 1.0) * cross;  // gain into l from rung l+1
      gen.lower[l] = g * n * cross;          // gain into l+1 from rung l
    }
  }
  return gen;
}

DecayBound gershgorin_gap(const SectorGenerator& generator) {
  if (classify_sector(generator.sector) == SectorKind::thermalizing)
    return {0.0, true};
  double rate = std::numeric_limits<double>::infinity();
  for (int l = 0; l < generator.dim(); ++l)
    rate = std::min(rate, -generator.column_sum(l));
  return {std::max(rate, 0.0), false};
}

}  // namespace dicke
