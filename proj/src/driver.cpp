#include "smalleig/driver.hpp"

#include <cmath>
#include <optional>

#include "smalleig/deflation.hpp"
#include "smalleig/errors.hpp"
#include "smalleig/hessenberg.hpp"
#include "smalleig/scalar.hpp"

namespace smalleig {

void GlobalData::validate() const {
  if (dimension < 1) throw ParameterOutOfRange("global dimension must be >= 1");
  if (!(norm_bound > 0.0) || !(pseudospectral_eps > 0.0) ||
      !(shattering_radius > 0.0)) {
    throw ParameterOutOfRange("global data entries must be positive");
  }
}

namespace {

constexpr std::uint64_t kPathGinibre = 0xA1;
constexpr std::uint64_t kPathPreprocess = 0x50;
constexpr std::uint64_t kPathSolve = 0x51;
constexpr std::uint64_t kPathRhess = 0x1000;
constexpr std::uint64_t kPathOneEig = 0x2000;
constexpr std::uint64_t kPathBlock = 0x3000;

void check_unit_interval(double v, const char* name) {
  if (!(v > 0.0) || !(v < 1.0)) {
    throw ParameterOutOfRange(std::string(name) + " must lie in (0, 1)");
  }
}

}  // namespace

ParameterLedger compute_parameters(double delta, double phi,
                                   const GlobalData& g) {
  check_unit_interval(delta, "delta");
  check_unit_interval(phi, "phi");
  g.validate();

  // Long-double intermediates so the stored doubles are correctly rounded to
  // within one ulp of the exact formulas.
  const long double n = g.dimension;
  const long double sigma = g.norm_bound;
  const long double eps = g.pseudospectral_eps;
  const long double zeta = g.shattering_radius;
  const long double d = delta;
  const long double f = phi;

  const long double big_delta = d * sigma / 2.0L;
  const long double omega = std::min(eps, big_delta) / (3.0L * n);
  const long double beta = omega / 20.0L;
  const long double p = f * eps * eps / (2.0L * n * n * n * n * n * zeta * zeta);
  const long double varphi = f / (2.0L * n);
  const long double m1_raw =
      12.0L * logl(n * zeta / eps) + 6.0L * logl(1.0L / p);
  const long m1 = std::max(1L, static_cast<long>(ceill(m1_raw)));
  const long double eta2 = std::min(beta / 5.0L, zeta / 3.0L);
  const long double eta1 =
      eta2 * sqrtl(varphi / (12.0L * logl(3.0L * sigma / (10.0L * beta))));
  const long double m2_raw =
      logl(zeta * zeta * n * n / (p * eps * eps)) / (2.0L * logl(15.0L));
  const long m2 = std::max(1L, static_cast<long>(ceill(m2_raw)));

  ParameterLedger ledger{};
  ledger.backward_target = static_cast<double>(big_delta);
  ledger.decouple_threshold = static_cast<double>(omega);
  ledger.forward_accuracy = static_cast<double>(beta);
  ledger.mass_lower_bound = static_cast<double>(p);
  ledger.oneeig_failure_tol = static_cast<double>(varphi);
  ledger.m1 = m1;
  ledger.m2 = m2;
  ledger.eta1 = static_cast<double>(eta1);
  ledger.eta2 = static_cast<double>(eta2);
  ledger.ginibre_scale = 0.0;
  ledger.ginibre_norm_bound = 0.0;
  ledger.required_bits = required_precision(ledger, g).bits;
  return ledger;
}

ShatteringParams shattering_parameters(double norm_m, double gamma, double phi,
                                       int n) {
  if (!(phi > 0.0) || !(phi < 0.5)) {
    throw ParameterOutOfRange("shattering failure budget must lie in (0, 1/2)");
  }
  if (!(gamma > 0.0) || !(gamma < norm_m / 2.0)) {
    throw ParameterOutOfRange("perturbation scale must lie in (0, ||M||/2)");
  }
  if (n < 1) throw ParameterOutOfRange("dimension must be >= 1");
  const long double nl = n;
  const long double g = gamma;
  const long double f = phi;
  const long double nm = norm_m;
  const long double n32 = nl * sqrtl(nl);
  const long double zeta = sqrtl(f) * g / (2.0L * sqrtl(3.0L) * n32);
  const long double eps =
      g * g * f /
      (180.0L * sqrtl(2.0L) * nm * logl(1.0L / f) * nl * nl * nl);
  return {static_cast<double>(eps), static_cast<double>(zeta)};
}

PrecisionRequirement required_precision(const ParameterLedger& ledger,
                                        const GlobalData& g) {
  const long double c_max =
      std::max({kHouseholderConstant, kHessenbergConstant, kMthRootConstant});
  const long double n = g.dimension;
  const long double nu = 32.0L * n * sqrtl(n);
  const long double lead = 6.0e3L * c_max * nu * n *
                           static_cast<long double>(g.shattering_radius) /
                           static_cast<long double>(g.pseudospectral_eps);
  const long double tail =
      44.0L * static_cast<long double>(g.norm_bound) /
      static_cast<long double>(ledger.eta1);
  const long double bits_raw =
      log2l(lead) + 2.0L * static_cast<long double>(ledger.m1) * log2l(tail);
  long bits = static_cast<long>(ceill(bits_raw));
  if (bits < 53) bits = 53;
  return {bits, "O(log^2(n/(delta*phi)))"};
}

PreprocessResult preprocess(const ComplexMatrix& M, double delta, double phi,
                            RngStream& rng) {
  check_unit_interval(delta, "delta");
  check_unit_interval(phi, "phi");
  if (!M.is_finite()) throw ParameterOutOfRange("input has non-finite entries");
  const int n = M.dim();
  double sigma_pre = operator_norm_estimate(M);
  if (sigma_pre == 0.0) throw ZeroMatrix("preprocess requires a nonzero matrix");

  const double w_bound =
      2.0 * std::sqrt(2.0) +
      std::sqrt(std::log(6.0 / phi) / static_cast<double>(n));
  const double gamma = delta * sigma_pre / (4.0 * w_bound);

  RngStream gin = rng.child(kPathGinibre);
  ComplexMatrix perturbed = M + sample_ginibre(n, gin).scaled(gamma);

  ShatteringParams sp = shattering_parameters(sigma_pre, gamma, phi / 3.0, n);
  GlobalData global{n, operator_norm_estimate(perturbed), sp.eps, sp.zeta};

  // The recursive solve runs at (delta/2, phi/3); its ledger is the one the
  // run will actually use.
  ParameterLedger ledger = compute_parameters(delta / 2.0, phi / 3.0, global);
  ledger.ginibre_scale = gamma;
  ledger.ginibre_norm_bound = w_bound;
  return {std::move(perturbed), global, ledger};
}

double omega_floor(const GlobalData& g) {
  double n = g.dimension;
  return 4096.0 * n * std::sqrt(n) * unit_roundoff_hw() * g.norm_bound;
}

namespace {

struct SolveState {
  const GlobalData& g;
  const ParameterLedger& ledger;
  const SolveOptions& opt;
  double omega_eff;
  double beta_eff;
  int retry_budget;
  int internal_vertices = 0;
  EigenReport& report;
};

void solve_block(SolveState& st, const ComplexMatrix& block, RngStream rng,
                 DeflationNode& node) {
  node.dim = block.dim();
  if (block.dim() == 1) {
    st.report.eigenvalues.push_back(block(0, 0));
    return;
  }
  ++st.internal_vertices;

  // Every vertex re-randomizes its Hessenberg form so the spectral measure
  // seen from e_n is refreshed after deflation; a failed round discards its
  // draw entirely, so only the final chain contributes backward error.
  std::optional<HessenbergMatrix> after;
  for (int attempt = 0; attempt <= st.retry_budget && !after; ++attempt) {
    RngStream hess_rng =
        rng.child(kPathRhess + static_cast<std::uint64_t>(attempt));
    HessenbergMatrix h = rhess(block, hess_rng);
    RngStream one_rng =
        rng.child(kPathOneEig + static_cast<std::uint64_t>(attempt));
    OneEigResult one =
        one_eig(h, st.beta_eff, st.ledger.oneeig_failure_tol,
                st.ledger.mass_lower_bound, st.g, one_rng,
                {st.opt.degree_cap});
    if (!one.correctness) {
      ++st.report.retries;
      ++node.retries;
      continue;
    }
    int cap = static_cast<int>(
        std::min<long>(st.ledger.m2, st.opt.degree_cap));
    try {
      after = decouple(h, one.lambda_hat, st.omega_eff, cap);
      if (st.opt.record_traces) st.report.traces.push_back(one.trace);
    } catch (const DecoupleBudgetExceeded&) {
      // The forward approximation was silently bad; redraw and retry.
      ++st.report.retries;
      ++node.retries;
    }
  }
  if (!after) {
    throw RetryBudgetExceeded(
        "one_eig/decouple failed on every retry; probabilistic failure");
  }
  ++st.report.rhess_calls;
  ++st.report.decouple_calls;

  DeflationSplit split = deflate(*after, st.omega_eff);
  ++st.report.deflate_calls;
  node.cuts = split.cut_positions;

  for (size_t i = 0; i < split.blocks.size(); ++i) {
    node.children.emplace_back();
    solve_block(st, split.blocks[i].matrix(),
                rng.child(kPathBlock + static_cast<std::uint64_t>(i)),
                node.children.back());
  }
}

}  // namespace

EigenReport small_eig(const ComplexMatrix& M, double delta, double phi,
                      const GlobalData& g, RngStream& rng,
                      const SolveOptions& opt) {
  if (!M.is_finite()) throw ParameterOutOfRange("input has non-finite entries");
  ParameterLedger ledger = compute_parameters(delta, phi, g);
  PrecisionRequirement req = required_precision(ledger, g);
  if (opt.mode == SolveMode::theory && req.bits > 53) {
    throw PrecisionInsufficient(
        "theory mode: hardware mantissa narrower than the required width",
        req.bits);
  }

  // Practical-mode roundoff floor: the verbatim omega can lie below what a
  // single IQR step perturbs, in which case Decouple could never exit. The
  // floor keeps 3(n-1) omega <= Delta intact or refuses honestly.
  const double floor = omega_floor(g);
  const double budget_cap = ledger.backward_target / (3.0 * g.dimension);
  if (budget_cap < floor) {
    throw PrecisionInsufficient(
        "backward-error target below the double-precision roundoff floor",
        req.bits);
  }
  const double omega_eff =
      std::min(budget_cap, std::max(ledger.decouple_threshold, floor));

  int retry_budget = opt.retry_budget;
  if (retry_budget < 0) {
    retry_budget =
        static_cast<int>(std::ceil(std::log2(1.0 / phi))) + 3;
  }

  EigenReport report{};
  report.n = M.dim();
  report.success = true;
  report.required_bits = ledger.required_bits;

  SolveState st{g,       ledger, opt, omega_eff, omega_eff / 20.0,
                retry_budget, 0,  report};
  solve_block(st, M, rng, report.tree);
  report.budget_used =
      report.rhess_calls + report.decouple_calls + report.deflate_calls;
  return report;
}

SolveOutcome solve(const ComplexMatrix& M, double delta, double phi,
                   RngStream& rng, const SolveOptions& opt) {
  double scale = operator_norm_estimate(M);
  if (scale == 0.0) throw ZeroMatrix("solve requires a nonzero matrix");
  // Work at unit scale so every derived threshold is scale-free; a positive
  // real scaling commutes with the whole pipeline.
  ComplexMatrix scaled = M.scaled(Complex(1.0 / scale, 0.0));
  RngStream pre_rng = rng.child(kPathPreprocess);
  PreprocessResult pre = preprocess(scaled, delta, phi, pre_rng);
  RngStream solve_rng = rng.child(kPathSolve);
  EigenReport report =
      small_eig(pre.perturbed, delta / 2.0, phi / 3.0, pre.global, solve_rng, opt);
  for (Complex& z : report.eigenvalues) z *= scale;
  return {std::move(report), pre.perturbed.scaled(Complex(scale, 0.0)),
          pre.global, pre.ledger};
}

EigenReport forward_eig(const ComplexMatrix& M, double beta, double phi,
                        RngStream& rng, const SolveOptions& opt) {
  if (!(beta > 0.0) || beta > 1.0) {
    throw ParameterOutOfRange("forward accuracy must lie in (0, 1]");
  }
  double delta = std::pow(beta / 12.0, M.dim());
  if (!(delta > 0.0)) {
    throw PrecisionInsufficient("forward target underflows the backward accuracy");
  }
  return solve(M, delta, phi, rng, opt).report;
}

}  // namespace smalleig
