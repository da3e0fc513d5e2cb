#include "pfsa/precision.hpp"

#include <cmath>

namespace pfsa {

double PrecisionModel::round(double x) const {
  if (x == 0.0 || !std::isfinite(x)) {
    return x;
  }
  int exp2 = 0;
  std::frexp(x, &exp2);  // x = f * 2^exp2, |f| in [0.5, 1)
  const int exponent = exp2 - 1;
  if (exponent < min_exponent) {
    return std::copysign(0.0, x);
  }
  const double scaled = std::ldexp(x, significand_bits - exp2);
  const double rounded = std::ldexp(std::nearbyint(scaled), exp2 - significand_bits);
  return rounded;
}

}  // namespace pfsa
