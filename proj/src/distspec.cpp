#include "smalleig/distspec.hpp"

#include <cmath>

#include "smalleig/errors.hpp"
#include "smalleig/scalar.hpp"

namespace smalleig {

int choose_m(double eps, double zeta, int n, double p) {
  if (!(eps > 0.0) || !(zeta > 0.0) || !(p > 0.0)) {
    throw NonPositiveParameter("choose_m requires positive eps, zeta, p");
  }
  if (p > 1.0) throw NonPositiveParameter("choose_m requires p <= 1");
  if (n < 1) throw NonPositiveParameter("choose_m requires n >= 1");
  double raw = 12.0 * (std::log(n * zeta / eps) + 0.5 * std::log(1.0 / p));
  double up = std::ceil(raw);
  if (up < 1.0) return 1;  // kappa_V = 1, p = 1 degenerate case
  return static_cast<int>(up);
}

NetPoints build_net(Complex s, double tau, double eta2, RngStream& rng) {
  if (!(tau > 0.0)) throw NonPositiveParameter("net radius must be positive");
  if (eta2 < 0.0) throw ParameterOutOfRange("net perturbation radius < 0");
  NetPoints net;
  net.center = s;
  net.tau = tau;
  net.w = sample_disk(eta2, rng);
  for (int l = 1; l <= 6; ++l) {
    double angle = M_PI * l / 3.0;
    net.points[static_cast<size_t>(l - 1)] =
        s + tau * Complex(std::cos(angle), std::sin(angle)) + net.w;
  }
  return net;
}

Complex regularize_shift(Complex s, double eta2, RngStream& rng) {
  if (eta2 < 0.0) throw ParameterOutOfRange("perturbation radius < 0");
  return s + sample_disk(eta2, rng);
}

DistSpecResult dist_spec(const HessenbergMatrix& H, Complex shift, int degree,
                         const TauPolicy& policy) {
  if (degree < 1) throw NonPositiveParameter("dist_spec requires degree >= 1");
  TauResult t = compute_tau_pow(H, shift, degree, policy);
  double tau;
  if (!t.out_of_range) {
    tau = mth_root(t.value, degree, 1e-3);
  } else {
    // Product left the double range; the log-space root is exact enough
    // (relative error ~ u * |log_value| / degree, far below 1e-3).
    tau = std::exp(t.log_value / degree);
  }
  return {tau, t.precond_checked, t.precond_ok};
}

}  // namespace smalleig
