#pragma once

#include <array>
#include <vector>

#include "smalleig/distspec.hpp"
#include "smalleig/global.hpp"
#include "smalleig/matrix.hpp"

namespace smalleig {

struct OneEigParams {
  int m;        // dist_spec degree (after the practical-mode cap)
  int m_uncapped;
  double eta1;  // guaranteed shift distance floor (probabilistic)
  double eta2;  // shift perturbation radius
  double beta;
  double varphi;
  double p;
};

inline constexpr int kDefaultDegreeCap = 256;

OneEigParams one_eig_params(double beta, double varphi, double p,
                            const GlobalData& g,
                            int degree_cap = kDefaultDegreeCap);

struct ShiftTraceIteration {
  Complex s;
  double tau;
  std::array<Complex, 6> net;
  std::array<double, 6> net_tau;
  int accepted_index;  // -1 when the contraction test failed
  bool precond_flag;   // some dist_spec call reported a violated precondition
  bool singular_flag;  // some net point was numerically on the spectrum
};

struct ShiftTrace {
  Complex s0;
  double tau0;
  std::vector<ShiftTraceIteration> iterations;
};

struct OneEigResult {
  Complex lambda_hat;
  bool correctness;
  ShiftTrace trace;
};

struct OneEigOptions {
  int degree_cap = kDefaultDegreeCap;
};

// Net-descent iteration: from s0 = H_nn + w, contract the distance estimate
// by 0.66 per accepted step over the perturbed six-point net until
// tau <= 0.9 beta. A step that cannot contract returns correctness = false
// (a value, not an error) so the caller can retry with a fresh Hessenberg
// draw. On success, eta1 <= dist(lambda_hat, Spec H) <= beta with probability
// at least 1 - varphi.
OneEigResult one_eig(const HessenbergMatrix& H, double beta, double varphi,
                     double p, const GlobalData& g, RngStream& rng,
                     const OneEigOptions& opt = {});

}  // namespace smalleig
