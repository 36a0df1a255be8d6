#pragma once

#include <span>
#include <vector>

#include "smalleig/matrix.hpp"

namespace smalleig {

struct IqrResult {
  HessenbergMatrix H_next;
  // |R_nn| of each QR factor, one per shift, all >= 0.
  std::vector<double> r_nn;
};

// One degree-1 implicit QR step: H_next = Q* H Q for [Q, R] = qr(H - s),
// realized with n-1 Givens rotations (form R, then R Q + s).
IqrResult iqr_step(const HessenbergMatrix& H, Complex shift);

// Composition of degree-1 steps, one per shift, in order. Empty shift list
// is the identity composition.
IqrResult iqr_poly(const HessenbergMatrix& H, std::span<const Complex> shifts);

// Precision-precondition policy for compute_tau_pow / dist_spec. In theory
// mode the bound is enforced (PrecisionInsufficient); in practical mode it is
// evaluated when the surrogates are supplied and only recorded.
struct TauPolicy {
  enum class Mode { practical, theory };
  Mode mode = Mode::practical;
  // Certified surrogates for the unknowable runtime quantities:
  // kappa_upper >= kappa_V(H), dist_lower <= dist(shift, Spec H),
  // norm_upper >= ||H||, and shifts lie in D(0, radius_factor * ||H||).
  double kappa_upper = 0.0;
  double dist_lower = 0.0;
  double norm_upper = 0.0;
  double radius_factor = 10.0;
  int bits = 53;

  bool has_surrogates() const {
    return kappa_upper > 0.0 && dist_lower > 0.0 && norm_upper > 0.0;
  }
  static TauPolicy practical() { return {}; }
};

struct TauResult {
  double value;     // product of the m R_nn magnitudes (may under/overflow)
  double log_value; // sum of log(R_nn), always finite when no R_nn is 0
  bool out_of_range;     // value under- or overflowed the double range
  bool precond_checked;
  bool precond_ok;
};

// Product of the m corner entries |R_nn| of IQR(H, (z-s)^m); equals
// ||e_n* (s-H)^{-m}||^{-1} in exact arithmetic. Accumulated in log space so
// large m cannot overflow; an exactly-zero R_nn raises SingularEncounter.
TauResult compute_tau_pow(const HessenbergMatrix& H, Complex shift, int degree,
                          const TauPolicy& policy = TauPolicy::practical());

}  // namespace smalleig
