#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace pfsa {

// A binary floating-point grid used to emulate lower-precision storage.
//
// Values are rounded to nearest (ties to even) with `significand_bits`
// bits of significand, counting the implicit leading bit. Anything whose
// exponent falls below `min_exponent` (the exponent of the smallest normal
// number, 2^min_exponent) is flushed to zero; subnormals are not modelled.
// Overflow is not modelled either.
struct PrecisionModel {
  int significand_bits = 53;
  int min_exponent = -1022;

  static PrecisionModel binary64() { return {53, -1022}; }
  static PrecisionModel binary32() { return {24, -126}; }
  static PrecisionModel bfloat16() { return {8, -126}; }

  double round(double x) const;

  // Rounds in place; returns how many nonzero entries were flushed to zero.
  template <class Derived>
  std::size_t round_in_place(Eigen::PlainObjectBase<Derived>& values) const {
    std::size_t flushed = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      const double before = values.coeff(k);
      const double after = round(before);
      values.coeffRef(k) = after;
      if (before != 0.0 && after == 0.0) {
        ++flushed;
      }
    }
    return flushed;
  }
};

}  // namespace pfsa
