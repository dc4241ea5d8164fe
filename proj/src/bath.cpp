#include "dicke/bath.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

void BathParams::validate() const {
  if (!(gamma_c >= 0.0) || !std::isfinite(gamma_c))
    throw DomainError("BathParams: gamma_c must be a finite nonnegative rate");
  if (!(gamma_l >= 0.0) || !std::isfinite(gamma_l))
    throw DomainError("BathParams: gamma_l must be a finite nonnegative rate");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw DomainError("BathParams: eta must lie in [0, 1]");
  if (!(alpha_c >= 0.0 && alpha_c < 1.0))
    throw DomainError("BathParams: alpha_c must lie in [0, 1)");
  if (!(alpha_l >= 0.0 && alpha_l < 1.0))
    throw DomainError("BathParams: alpha_l must lie in [0, 1)");
}

}  // namespace dicke
