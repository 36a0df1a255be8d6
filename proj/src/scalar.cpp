#include "smalleig/scalar.hpp"

#include <cmath>

#include "smalleig/errors.hpp"

namespace smalleig {

PrecisionConfig PrecisionConfig::hardware_double() {
  return PrecisionConfig(53, Mode::hardware_double);
}

PrecisionConfig PrecisionConfig::extended(int bits) {
  if (bits < 53) {
    throw ParameterOutOfRange("precision config requires bits >= 53, got " +
                              std::to_string(bits));
  }
  return PrecisionConfig(bits, Mode::extended);
}

double unit_roundoff(const PrecisionConfig& cfg) {
  return std::ldexp(1.0, 1 - cfg.bits());
}

double mth_root(double a, int m, double eps_rel) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw NonPositiveInput("mth_root requires a positive finite input");
  }
  if (m < 1) {
    throw NonPositiveParameter("mth_root requires m >= 1");
  }
  if (!(eps_rel > 0.0) || eps_rel > 0.5) {
    throw ParameterOutOfRange("mth_root tolerance must lie in (0, 1/2]");
  }
  if (eps_rel < static_cast<double>(m) * kMthRootConstant * unit_roundoff_hw()) {
    throw PrecisionInsufficient(
        "mth_root tolerance below m * c * u at 53 mantissa bits");
  }
  if (m == 1) return a;
  long double r = expl(logl(static_cast<long double>(a)) /
                       static_cast<long double>(m));
  return static_cast<double>(r);
}

}  // namespace smalleig
