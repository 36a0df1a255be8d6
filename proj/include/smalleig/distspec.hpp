#pragma once

#include <array>

#include "smalleig/iqr.hpp"
#include "smalleig/matrix.hpp"

namespace smalleig {

// Degree for the distance estimator: ceil(12 (log(n zeta / eps) +
// log(1/p)/2)), clamped to at least 1.
int choose_m(double eps, double zeta, int n, double p);

// Six points s + tau e^{i pi l / 3} + w, l = 1..6, with one shared
// perturbation w ~ Unif(D(0, eta2)).
struct NetPoints {
  std::array<Complex, 6> points;
  Complex center;
  double tau;
  Complex w;
};

NetPoints build_net(Complex s, double tau, double eta2, RngStream& rng);

// s + w with w ~ Unif(D(0, eta2)).
Complex regularize_shift(Complex s, double eta2, RngStream& rng);

struct DistSpecResult {
  double tau;  // estimate of dist(s, Spec H)
  bool precond_checked;
  bool precond_ok;
};

// tau_{(z-s)^m}(H)^{1/m}: the m-th root of compute_tau_pow at relative
// tolerance 1e-3. Falls back to the log-space root when the raw product
// leaves the double range.
DistSpecResult dist_spec(const HessenbergMatrix& H, Complex shift, int degree,
                         const TauPolicy& policy = TauPolicy::practical());

}  // namespace smalleig
