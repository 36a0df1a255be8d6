#include "smalleig/oneeig.hpp"

#include <algorithm>
#include <cmath>

#include "smalleig/errors.hpp"
#include "smalleig/scalar.hpp"

namespace smalleig {

OneEigParams one_eig_params(double beta, double varphi, double p,
                            const GlobalData& g, int degree_cap) {
  if (!(beta > 0.0) || !(varphi > 0.0) || !(p > 0.0)) {
    throw NonPositiveParameter("one_eig parameters must be positive");
  }
  g.validate();
  if (beta > g.norm_bound / 10.0) {
    throw NonPositiveParameter("accuracy target exceeds norm_bound / 10");
  }
  int m = choose_m(g.pseudospectral_eps, g.shattering_radius, g.dimension, p);
  double eta2 = std::min(beta / 5.0, g.shattering_radius / 3.0);
  double denom = 12.0 * std::log(3.0 * g.norm_bound / (10.0 * beta));
  double eta1 = eta2 * std::sqrt(varphi / denom);
  return {std::min(m, degree_cap), m, eta1, eta2, beta, varphi, p};
}

namespace {

struct DistOutcome {
  double tau;
  bool precond_flag;
  bool singular;
};

DistOutcome guarded_dist(const HessenbergMatrix& H, Complex s, int degree) {
  try {
    DistSpecResult r = dist_spec(H, s, degree);
    return {r.tau, r.precond_checked && !r.precond_ok, false};
  } catch (const SingularEncounter&) {
    // Shift numerically on the spectrum: distance estimate is zero.
    return {0.0, false, true};
  }
}

}  // namespace

OneEigResult one_eig(const HessenbergMatrix& H, double beta, double varphi,
                     double p, const GlobalData& g, RngStream& rng,
                     const OneEigOptions& opt) {
  const int n = H.dim();
  if (n < 2) throw RequiresViolation("one_eig needs dimension >= 2");
  if (beta > 0.5) throw RequiresViolation("one_eig requires beta <= 1/2");
  // Only definite violations of the norm window are rejectable online.
  double fro = H.matrix().frobenius_norm();
  if (fro < 10.0 * beta) {
    throw RequiresViolation("||H|| < 10 beta");
  }
  if (fro / std::sqrt(static_cast<double>(n)) > 2.0 * g.norm_bound) {
    throw RequiresViolation("||H|| > 2 sigma");
  }

  OneEigParams prm = one_eig_params(beta, varphi, p, g, opt.degree_cap);

  ShiftTrace trace;
  Complex s = H(n - 1, n - 1) + sample_disk(prm.eta2, rng);
  DistOutcome d0 = guarded_dist(H, s, prm.m);
  double tau = d0.tau;
  trace.s0 = s;
  trace.tau0 = tau;

  // Mechanical bound: accepted steps contract tau by 0.66, so the loop is
  // intrinsically finite; the cap only guards against degenerate inputs.
  double span = std::max(4.6 * g.norm_bound / std::max(0.9 * beta, 1e-300), 2.0);
  int hard_cap = 2 * static_cast<int>(std::ceil(std::log(span) /
                                                std::log(1.0 / 0.66))) + 64;

  while (tau > 0.9 * beta) {
    if (static_cast<int>(trace.iterations.size()) > hard_cap) {
      return {s, false, std::move(trace)};
    }
    NetPoints net = build_net(s, tau, prm.eta2, rng);
    ShiftTraceIteration it;
    it.s = s;
    it.tau = tau;
    it.net = net.points;
    it.precond_flag = false;
    it.singular_flag = false;
    double best = 0.0;
    int best_j = -1;
    for (int j = 0; j < 6; ++j) {
      DistOutcome dj = guarded_dist(H, net.points[static_cast<size_t>(j)], prm.m);
      it.net_tau[static_cast<size_t>(j)] = dj.tau;
      it.precond_flag = it.precond_flag || dj.precond_flag;
      it.singular_flag = it.singular_flag || dj.singular;
      if (best_j < 0 || dj.tau < best) {
        best = dj.tau;
        best_j = j;
      }
    }
    if (best <= 0.66 * tau) {
      it.accepted_index = best_j;
      trace.iterations.push_back(it);
      s = net.points[static_cast<size_t>(best_j)];
      tau = best;
    } else {
      it.accepted_index = -1;
      trace.iterations.push_back(it);
      return {s, false, std::move(trace)};
    }
  }
  return {s, true, std::move(trace)};
}

}  // namespace smalleig
