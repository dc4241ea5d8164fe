#include "dicke/sectors.hpp"

#include <limits>
#include <stdexcept>

#include "dicke/errors.hpp"

namespace dicke {

std::string half_label(int twice_value) {
  if (twice_value % 2 == 0) return std::to_string(twice_value / 2);
  return std::to_string(twice_value) + "/2";
}

std::uint64_t binomial(int n, int k) {
  if (n < 0) throw DomainError("binomial: negative n");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw DomainError("binomial: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t sector_multiplicity(int n_qubits, int twice_j) {
  if (n_qubits < 1) throw DomainError("sector_multiplicity: need at least one qubit");
  if (twice_j < 0 || twice_j > n_qubits || (n_qubits - twice_j) % 2 != 0)
    throw DomainError("sector_multiplicity: j must lie in {N/2, N/2-1, ...} for N qubits");
  const int k = (n_qubits - twice_j) / 2;
  return binomial(n_qubits, k) - binomial(n_qubits, k - 1);
}

std::vector<SectorInfo> enumerate_sectors(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 64)
    throw DomainError("enumerate_sectors: N must be in [1, 64]");
  std::vector<SectorInfo> out;
  unsigned __int128 total = 0;
  for (int tj = n_qubits; tj >= 0; tj -= 2) {
    const std::uint64_t nu = sector_multiplicity(n_qubits, tj);
    out.push_back({tj, nu});
    total += static_cast<unsigned __int128>(nu) * static_cast<unsigned>(tj + 1);
  }
  const unsigned __int128 expect = static_cast<unsigned __int128>(1) << n_qubits;
  if (total != expect)
    throw std::logic_error("enumerate_sectors: dimension sum rule violated");
  return out;
}

double lowering_factor(int twice_j, int twice_m) {
  // (j+m)(j-m+1) with doubled arguments; zero outside the ladder.
  const double v = (twice_j + twice_m) * (twice_j - twice_m + 2) / 4.0;
  return v > 0.0 ? v : 0.0;
}

LadderCoefficients ladder_coefficients(int twice_j) {
  if (twice_j < 0) throw DomainError("ladder_coefficients: j must be >= 0");
  LadderCoefficients lc;
  lc.twice_j = twice_j;
  lc.a.resize(twice_j + 1);
  lc.b.resize(twice_j + 1);
  for (int l = 0; l <= twice_j; ++l) {
    const int tm = -twice_j + 2 * l;
    lc.a[l] = lowering_factor(twice_j, tm);
    lc.b[l] = lowering_factor(twice_j, -tm);  // (j-m)(j+m+1) by m -> -m symmetry
  }
  return lc;
}

}  // namespace dicke
