#pragma once

#include <cmath>

namespace smalleig {

// Mantissa-width configuration. bits >= 53; hardware-double mode pins 53.
class PrecisionConfig {
 public:
  enum class Mode { hardware_double, extended };

  static PrecisionConfig hardware_double();
  static PrecisionConfig extended(int bits);

  int bits() const { return bits_; }
  Mode mode() const { return mode_; }

 private:
  PrecisionConfig(int bits, Mode mode) : bits_(bits), mode_(mode) {}
  int bits_;
  Mode mode_;
};

// Unit roundoff 2^(1-bits); 2^-52 for hardware doubles.
double unit_roundoff(const PrecisionConfig& cfg);

inline double unit_roundoff_hw() { return std::ldexp(1.0, -52); }

// Relative-error constant of mth_root: callers must pass
// eps_rel >= m * kMthRootConstant * u. Conservative across platforms where
// long double has no extra mantissa bits.
inline constexpr double kMthRootConstant = 16.0;

// a^(1/m) with relative error <= eps_rel, eps_rel in (0, 1/2].
// Computed as exp(log(a)/m) with long-double guard digits.
double mth_root(double a, int m, double eps_rel);

// Error-budget constants used in assertions and precision formulas.
// Both stand in for "small universal constants" and are tunable.
inline constexpr double kHouseholderConstant = 12.0;  // c_h
inline constexpr double kHessenbergConstant = 20.0;   // c_H

// Stability factor of the degree-1 implicit QR step: 32 n^(3/2).
inline double iqr_stability(int n) {
  return 32.0 * static_cast<double>(n) * std::sqrt(static_cast<double>(n));
}

}  // namespace smalleig
