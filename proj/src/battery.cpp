#include "smalleig/battery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smalleig/deflation.hpp"
#include "smalleig/distspec.hpp"
#include "smalleig/driver.hpp"
#include "smalleig/errors.hpp"
#include "smalleig/hessenberg.hpp"
#include "smalleig/iqr.hpp"
#include "smalleig/mp.hpp"
#include "smalleig/oneeig.hpp"
#include "smalleig/opcount.hpp"
#include "smalleig/scalar.hpp"
#include "verify_internal.hpp"

namespace smalleig::battery {

namespace {

using verify::ShatteringCertificate;

int scaled_trials(int full, double scale, int floor_count) {
  return std::max(floor_count, static_cast<int>(std::lround(full * scale)));
}

double binomial_sigma(double p, int n) {
  double q = std::clamp(p, 1e-12, 1.0 - 1e-12);
  return std::sqrt(q * (1.0 - q) / n);
}

ComplexMatrix gaussian_matrix(int n, RngStream& rng) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

double dist_to_spectrum(Complex s, std::span<const Complex> eigs) {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& z : eigs) best = std::min(best, std::abs(s - z));
  return best;
}

// ||e_n* (s - H)^{-m}|| by m adjoint solves.
double resolvent_row_norm(const HessenbergMatrix& H, Complex s, int m) {
  const int n = H.dim();
  ComplexMatrix B = H.matrix().scaled(Complex(-1.0, 0.0));
  B.add_to_diagonal(s);
  verify::detail::LuFactors f(B.adjoint());
  std::vector<Complex> y(static_cast<size_t>(n), Complex(0.0));
  y[static_cast<size_t>(n - 1)] = 1.0;
  for (int k = 0; k < m; ++k) {
    for (Complex& z : y) z = std::conj(z);
    y = f.solve(y);
    for (Complex& z : y) z = std::conj(z);
  }
  double s2 = 0.0;
  for (const Complex& z : y) s2 += std::norm(z);
  return std::sqrt(s2);
}

// Fast sigma_max for Monte Carlo tails; one start, fixed iteration count.
double quick_sigma_max(const ComplexMatrix& m, int iters = 60) {
  const int n = m.dim();
  std::vector<Complex> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    x[static_cast<size_t>(i)] = Complex(1.0, 0.1 * (i % 7));
  double sigma = 0.0;
  for (int it = 0; it < iters; ++it) {
    double nx = 0.0;
    for (const Complex& z : x) nx += std::norm(z);
    nx = std::sqrt(nx);
    if (nx == 0.0) break;
    for (Complex& z : x) z /= nx;
    std::vector<Complex> y = m.apply(x);
    sigma = 0.0;
    for (const Complex& z : y) sigma += std::norm(z);
    sigma = std::sqrt(sigma);
    x = m.apply_adjoint(y);
  }
  return sigma;
}

CheckResult make_result(const std::string& name, bool pass,
                        const std::ostringstream& detail) {
  return {name, pass, detail.str()};
}

}  // namespace

ShatteredInstance make_shattered_instance(int n, RngStream& rng) {
  RngStream jitter = rng.child(1);
  std::vector<Complex> centers(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double angle = 2.0 * M_PI * k / n;
    centers[static_cast<size_t>(k)] =
        Complex(std::cos(angle), std::sin(angle)) +
        sample_disk(0.05, jitter);
  }
  ComplexMatrix m = ComplexMatrix::diagonal(centers);
  RngStream noise = rng.child(2);
  m = m + sample_ginibre(n, noise).scaled(0.02);
  RngStream hess_rng = rng.child(3);
  HessenbergMatrix h = rhess(m, hess_rng);

  std::vector<Complex> spectrum = verify::oracle_eigenvalues(h.matrix());
  double gap = verify::min_gap(spectrum);
  double zeta = gap / 4.0;
  double eps = zeta / 8.0;
  bool certified = false;
  for (int attempt = 0; attempt < 6 && !certified; ++attempt) {
    ShatteringCertificate cert =
        verify::check_shattered(h.matrix(), eps, zeta, zeta / 4.01);
    certified = cert.verdict;
    if (!certified) eps /= 8.0;
  }
  if (!certified) {
    throw Error("shattered fixture generation failed to certify");
  }

  verify::SpectralMeasure sm = verify::spectral_measure(h);
  double p_min = 1.0;
  for (double w : sm.masses) p_min = std::min(p_min, w);
  p_min *= 0.999;

  GlobalData g{n, operator_norm_estimate(h.matrix()), eps, zeta};
  return {std::move(h), g, p_min, std::move(spectrum)};
}

CheckResult criterion_end_to_end(double scale, std::uint64_t seed) {
  RngStream root(seed);
  const double delta = 0.05;
  const double phi = 0.2;
  const int per_n = scaled_trials(50, scale, 4);
  int total = 0, success = 0;
  int forward_violations = 0, ceiling_violations = 0;
  double worst_ratio = 0.0;

  for (int n : {3, 5, 8}) {
    for (int k = 0; k < per_n; ++k) {
      RngStream trial = root.child(static_cast<std::uint64_t>(n * 1000 + k));
      RngStream gen = trial.child(0);
      ComplexMatrix m = gaussian_matrix(n, gen);
      ++total;
      try {
        RngStream solver = trial.child(1);
        SolveOutcome out = solve(m, delta, phi, solver);
        ++success;
        std::vector<Complex> truth =
            verify::oracle_eigenvalues(out.perturbed);
        double md = verify::matching_distance(out.report.eigenvalues, truth);
        double norm_m = verify::largest_singular_value(m);
        if (md > delta * norm_m) ++forward_violations;
        worst_ratio = std::max(worst_ratio, md / (delta * norm_m));
        double norm_hat = norm_m * (1.0 + delta);
        double ceiling = 4.0 *
                         std::pow(norm_m + norm_hat, 1.0 - 1.0 / n) *
                         std::pow(delta * norm_m, 1.0 / n);
        if (md > ceiling) ++ceiling_violations;
      } catch (const RetryBudgetExceeded&) {
        // counted as a probabilistic failure
      }
    }
  }
  double rate = static_cast<double>(success) / total;
  double needed = 1.0 - phi - 0.1;
  bool pass = rate >= needed && forward_violations == 0 &&
              ceiling_violations == 0;
  std::ostringstream d;
  d << "success " << success << "/" << total << " (need >= " << needed
    << "), direct-bound violations " << forward_violations
    << ", ceiling violations " << ceiling_violations
    << ", worst matched-error ratio " << worst_ratio;
  return make_result("C1 end-to-end backward/forward error", pass, d);
}

CheckResult criterion_distspec_bracket(double scale, std::uint64_t seed) {
  RngStream root(seed);
  const int trials = scaled_trials(100, scale, 10);
  int inside = 0;
  for (int k = 0; k < trials; ++k) {
    int n = 3 + (k % 4);
    RngStream trial = root.child(static_cast<std::uint64_t>(k));
    RngStream fixture = trial.child(0);
    ShatteredInstance inst = make_shattered_instance(n, fixture);
    double sigma = inst.global.norm_bound;

    RngStream shift_rng = trial.child(1);
    Complex s;
    double d = 0.0;
    do {
      s = sample_disk(2.0 * sigma, shift_rng);
      d = dist_to_spectrum(s, inst.spectrum);
    } while (d < 1e-4 * sigma);

    int m = choose_m(inst.global.pseudospectral_eps,
                     inst.global.shattering_radius, n, inst.p_min);
    double tau = dist_spec(inst.H, s, m).tau;
    if (tau >= 0.9 * d && tau <= 1.1 * d) ++inside;
  }
  int allowed = std::max(1, static_cast<int>(std::lround(trials * 0.01)));
  if (scale < 1.0) allowed = std::max(allowed, static_cast<int>(std::lround(trials * 0.02)));
  bool pass = (trials - inside) <= allowed;
  std::ostringstream d;
  d << "bracket hits " << inside << "/" << trials << " (allowed misses "
    << allowed << ")";
  return make_result("C2 dist_spec two-sided bracket", pass, d);
}

CheckResult criterion_oneeig_trace(double scale, std::uint64_t seed) {
  RngStream root(seed);
  const int trials = scaled_trials(60, scale, 6);
  const double varphi = 0.1;
  int successes = 0;
  int contraction_violations = 0, iter_violations = 0, forward_violations = 0;
  int eta1_hits = 0;

  for (int k = 0; k < trials; ++k) {
    int n = 4 + (k % 3);
    RngStream trial = root.child(static_cast<std::uint64_t>(k));
    RngStream fixture = trial.child(0);
    ShatteredInstance inst = make_shattered_instance(n, fixture);
    double sigma = inst.global.norm_bound;
    double beta = 1e-4 * sigma;

    OneEigParams prm =
        one_eig_params(beta, varphi, inst.p_min, inst.global);
    RngStream run = trial.child(1);
    OneEigResult res =
        one_eig(inst.H, beta, varphi, inst.p_min, inst.global, run);
    if (!res.correctness) continue;
    ++successes;

    for (const ShiftTraceIteration& it : res.trace.iterations) {
      if (it.accepted_index < 0) continue;
      double accepted = it.net_tau[static_cast<size_t>(it.accepted_index)];
      if (accepted > 0.66 * it.tau * (1.0 + 1e-12)) ++contraction_violations;
    }
    double iter_bound = std::ceil(2.0 * std::log(sigma / (5.0 * beta)));
    if (static_cast<double>(res.trace.iterations.size()) > iter_bound) {
      ++iter_violations;
    }
    double d = dist_to_spectrum(res.lambda_hat, inst.spectrum);
    if (d > beta * (1.0 + 1e-9)) ++forward_violations;
    if (d >= prm.eta1) ++eta1_hits;
  }

  double eta1_rate =
      successes > 0 ? static_cast<double>(eta1_hits) / successes : 0.0;
  bool pass = successes >= trials / 2 && contraction_violations == 0 &&
              iter_violations == 0 && forward_violations == 0 &&
              eta1_rate >= 1.0 - varphi - 0.1;
  std::ostringstream d;
  d << "successes " << successes << "/" << trials << ", contraction viol "
    << contraction_violations << ", iteration viol " << iter_violations
    << ", forward viol " << forward_violations << ", eta1 rate " << eta1_rate;
  return make_result("C3 one_eig contraction and exit", pass, d);
}

CheckResult criterion_decouple(double scale, std::uint64_t seed) {
  RngStream root(seed);
  const int trials = scaled_trials(60, scale, 6);
  const double varphi = 0.1;
  int attempts = 0, within_cap = 0, spectrum_violations = 0;

  for (int k = 0; k < trials; ++k) {
    int n = (k % 3 == 0) ? 4 : ((k % 3 == 1) ? 6 : 8);
    RngStream trial = root.child(static_cast<std::uint64_t>(k));
    RngStream fixture = trial.child(0);
    ShatteredInstance inst = make_shattered_instance(n, fixture);
    double sigma = inst.global.norm_bound;
    double omega = 1e-4 * sigma;
    double beta = omega / 20.0;

    RngStream run = trial.child(1);
    OneEigResult res =
        one_eig(inst.H, beta, varphi, inst.p_min, inst.global, run);
    if (!res.correctness) continue;
    ++attempts;

    double kappa = n * inst.global.shattering_radius /
                   inst.global.pseudospectral_eps;
    int cap = decouple_step_cap(kappa, inst.p_min, omega, beta);
    try {
      HessenbergMatrix after = decouple(inst.H, res.lambda_hat, omega, cap);
      ++within_cap;
      double md = verify::matching_distance(
          inst.spectrum, verify::oracle_eigenvalues(after.matrix()));
      if (md > 1e-8 * sigma) ++spectrum_violations;
    } catch (const DecoupleBudgetExceeded&) {
    }
  }
  double rate =
      attempts > 0 ? static_cast<double>(within_cap) / attempts : 0.0;
  bool pass = attempts >= trials / 2 && rate >= 0.95 &&
              spectrum_violations == 0;
  std::ostringstream d;
  d << "within cap " << within_cap << "/" << attempts
    << " one_eig successes, spectrum violations " << spectrum_violations;
  return make_result("C4 decouple budget and spectrum", pass, d);
}

CheckResult criterion_net_covering(double scale, std::uint64_t seed) {
  RngStream root(seed);
  const int trials = scaled_trials(10000, scale, 1000);
  const Complex s(0.3, 0.7);
  const double tau = 1.3;
  const double eta2 = 0.03 * tau;
  int failures = 0;
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    RngStream trial = root.child(static_cast<std::uint64_t>(k));
    NetPoints net = build_net(s, tau, eta2, trial);
    double r = tau * (0.9 + 0.22 * trial.next_uniform01());
    double angle = 2.0 * M_PI * trial.next_uniform01();
    Complex z = s + Complex(r * std::cos(angle), r * std::sin(angle));
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& p : net.points) best = std::min(best, std::abs(z - p));
    worst = std::max(worst, best / tau);
    if (best > 0.6 * tau) ++failures;
  }
  bool pass = failures == 0;
  std::ostringstream d;
  d << trials << " annulus points, failures " << failures
    << ", worst dist/tau " << worst;
  return make_result("C5 six-point net covering", pass, d);
}

CheckResult criterion_anticoncentration(double scale, std::uint64_t seed) {
  RngStream root(seed);
  const int trials = scaled_trials(100000, scale, 10000);
  const double margin = (scale >= 1.0) ? 0.01 : 0.02;
  const double ts[] = {0.1, 0.3, 0.5};
  bool pass = true;
  std::ostringstream d;
  for (int n : {2, 8}) {
    std::vector<Complex> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = Complex(1.0 + i, 0.5 * i - 1.0);
    double nv = 0.0;
    for (const Complex& z : v) nv += std::norm(z);
    nv = std::sqrt(nv);
    for (Complex& z : v) z /= nv;

    int counts[3] = {0, 0, 0};
    RngStream stream = root.child(static_cast<std::uint64_t>(n));
    for (int k = 0; k < trials; ++k) {
      std::vector<Complex> u = sample_unit_sphere(n, stream);
      Complex ip = 0.0;
      for (int i = 0; i < n; ++i) ip += std::conj(u[static_cast<size_t>(i)]) * v[static_cast<size_t>(i)];
      double a = std::abs(ip);
      for (int ti = 0; ti < 3; ++ti) {
        if (a <= ts[ti] / std::sqrt(static_cast<double>(n - 1))) ++counts[ti];
      }
    }
    for (int ti = 0; ti < 3; ++ti) {
      double emp = static_cast<double>(counts[ti]) / trials;
      double bound = ts[ti] * ts[ti] + margin;
      if (emp > bound) pass = false;
      d << "n=" << n << " t=" << ts[ti] << ": " << emp << " <= " << bound
        << "; ";
    }
  }
  return make_result("C6 sphere anti-concentration", pass, d);
}

namespace {

// 200-bit mirror of the parameter cascade for C7.
struct MpLedger {
  MpReal big_delta, omega, beta, p, varphi, eta1, eta2;
  long m1, m2;
  long bits;
};

MpLedger mp_parameters(double delta, double phi, const GlobalData& g) {
  const int B = 200;
  MpReal n(static_cast<long>(g.dimension), B);
  MpReal sigma(g.norm_bound, B);
  MpReal eps(g.pseudospectral_eps, B);
  MpReal zeta(g.shattering_radius, B);
  MpReal d(delta, B), f(phi, B);
  MpReal two(2.0, B), three(3.0, B), twenty(20.0, B);

  MpLedger out;
  out.big_delta = d * sigma / two;
  out.omega = min(eps, out.big_delta) / (three * n);
  out.beta = out.omega / twenty;
  MpReal n5 = pow_si(n, 5);
  out.p = f * eps * eps / (two * n5 * zeta * zeta);
  out.varphi = f / (two * n);
  MpReal m1_raw = MpReal(12.0, B) * log(n * zeta / eps) +
                  MpReal(6.0, B) * log(MpReal(1.0, B) / out.p);
  out.m1 = std::max(1L, ceil(m1_raw).to_long());
  out.eta2 = min(out.beta / MpReal(5.0, B), zeta / three);
  MpReal logterm = log(three * sigma / (MpReal(10.0, B) * out.beta));
  out.eta1 = out.eta2 * sqrt(out.varphi / (MpReal(12.0, B) * logterm));
  MpReal m2_raw = log(zeta * zeta * n * n / (out.p * eps * eps)) /
                  (two * log(MpReal(15.0, B)));
  out.m2 = std::max(1L, ceil(m2_raw).to_long());

  MpReal c_max(std::max({kHouseholderConstant, kHessenbergConstant,
                         kMthRootConstant}),
               B);
  MpReal nu = MpReal(32.0, B) * n * sqrt(n);
  MpReal lead = MpReal(6.0e3, B) * c_max * nu * n * zeta / eps;
  MpReal tail = MpReal(44.0, B) * sigma / out.eta1;
  MpReal bits_raw = log2(lead) + MpReal(2L * out.m1, B) * log2(tail);
  out.bits = std::max(53L, ceil(bits_raw).to_long());
  return out;
}

bool within_one_ulp(double a, double b) {
  if (a == b) return true;
  return b == std::nextafter(a, b);
}

}  // namespace

CheckResult criterion_precision_formulas(double scale, std::uint64_t seed) {
  (void)scale;  // cheap; always run the full 20 ledgers
  RngStream root(seed);
  int mismatches = 0;
  std::ostringstream d;
  for (int k = 0; k < 20; ++k) {
    RngStream trial = root.child(static_cast<std::uint64_t>(k));
    int n = 2 + static_cast<int>(trial.next_uniform01() * 10.99);
    double sigma = 0.5 + 7.5 * trial.next_uniform01();
    double phi = 0.02 + 0.43 * trial.next_uniform01();
    double delta = 0.02 + 0.88 * trial.next_uniform01();
    double gamma = sigma * (0.05 + 0.4 * trial.next_uniform01());

    ShatteringParams sp = shattering_parameters(sigma, gamma, phi, n);
    {
      const int B = 200;
      MpReal nl(static_cast<long>(n), B), gl(gamma, B), fl(phi, B),
          sl(sigma, B);
      MpReal n32 = nl * sqrt(nl);
      MpReal zeta_mp = sqrt(fl) * gl / (MpReal(2.0, B) * sqrt(MpReal(3.0, B)) * n32);
      MpReal eps_mp = gl * gl * fl /
                      (MpReal(180.0, B) * sqrt(MpReal(2.0, B)) * sl *
                       log(MpReal(1.0, B) / fl) * pow_si(nl, 3));
      if (!within_one_ulp(sp.zeta, zeta_mp.to_double())) ++mismatches;
      if (!within_one_ulp(sp.eps, eps_mp.to_double())) ++mismatches;
    }

    GlobalData g{n, sigma, sp.eps, sp.zeta};
    ParameterLedger ledger = compute_parameters(delta, phi, g);
    MpLedger mp = mp_parameters(delta, phi, g);
    if (!within_one_ulp(ledger.backward_target, mp.big_delta.to_double())) ++mismatches;
    if (!within_one_ulp(ledger.decouple_threshold, mp.omega.to_double())) ++mismatches;
    if (!within_one_ulp(ledger.forward_accuracy, mp.beta.to_double())) ++mismatches;
    if (!within_one_ulp(ledger.mass_lower_bound, mp.p.to_double())) ++mismatches;
    if (!within_one_ulp(ledger.oneeig_failure_tol, mp.varphi.to_double())) ++mismatches;
    if (!within_one_ulp(ledger.eta1, mp.eta1.to_double())) ++mismatches;
    if (!within_one_ulp(ledger.eta2, mp.eta2.to_double())) ++mismatches;
    if (ledger.m1 != mp.m1) ++mismatches;
    if (ledger.m2 != mp.m2) ++mismatches;
    if (ledger.required_bits != mp.bits) ++mismatches;
    if (ledger.m2 > ledger.m1) ++mismatches;
  }
  bool pass = mismatches == 0;
  d << "20 random ledgers, mismatches " << mismatches;
  return make_result("C7 precision formulas vs 200-bit oracle", pass, d);
}

CheckResult criterion_cost_model(double scale, std::uint64_t seed) {
  (void)scale;
  RngStream root(seed);
  bool pass = true;
  std::ostringstream d;
  for (int n : {8, 16, 32}) {
    RngStream gen = root.child(static_cast<std::uint64_t>(n));
    ComplexMatrix m = gaussian_matrix(n, gen);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j + 1 < i; ++j) m(i, j) = 0.0;
    HessenbergMatrix h = HessenbergMatrix::from_unchecked(std::move(m));
    const int degree = 5;
    std::vector<Complex> shifts(static_cast<size_t>(degree), Complex(0.3, 0.1));
    ops::reset();
    iqr_poly(h, shifts);
    double actual = static_cast<double>(ops::count());
    double model = 7.0 * degree * n * n;
    double ratio = actual / model;
    if (ratio < 0.5 || ratio > 2.0) pass = false;
    d << "iqr n=" << n << " ratio " << ratio << "; ";
  }
  for (int n : {8, 16, 32}) {
    RngStream gen = root.child(static_cast<std::uint64_t>(100 + n));
    ComplexMatrix m = gaussian_matrix(n, gen);
    ops::reset();
    hess_bu(m);
    double actual = static_cast<double>(ops::count());
    double model = 10.0 / 3.0 * n * n * n;
    double ratio = actual / model;
    if (ratio < 0.5 || ratio > 2.0) pass = false;
    d << "hess n=" << n << " ratio " << ratio << "; ";
  }
  return make_result("C8 arithmetic cost model", pass, d);
}

CheckResult criterion_tail_bounds(double scale, std::uint64_t seed) {
  RngStream root(seed);
  bool pass = true;
  std::ostringstream d;

  {
    const int trials = std::max(1000, scaled_trials(2000, scale, 1000));
    RngStream gap_rng = root.child(1);
    for (double t : {0.01, 0.05}) {
      double emp = verify::monte_carlo_gap_bound(4, 1.0, t, trials, gap_rng);
      double bound = 64.0 * t * t;
      double limit = bound + 3.0 * binomial_sigma(bound, trials);
      if (emp > limit) pass = false;
      d << "gap t=" << t << ": " << emp << " <= " << limit << "; ";
    }
  }

  {
    const int trials = scaled_trials(10000, scale, 2000);
    const int n = 8;
    const double thresh = 2.0 * std::sqrt(2.0) + 0.5;
    RngStream g_rng = root.child(2);
    int hits = 0;
    for (int k = 0; k < trials; ++k) {
      RngStream trial = g_rng.child(static_cast<std::uint64_t>(k));
      if (quick_sigma_max(sample_ginibre(n, trial)) >= thresh) ++hits;
    }
    double emp = static_cast<double>(hits) / trials;
    double bound = 2.0 * std::exp(-n * 0.25);
    double limit = bound + 3.0 * binomial_sigma(bound, trials);
    if (emp > limit) pass = false;
    d << "ginibre norm tail: " << emp << " <= " << limit << "; ";
  }

  {
    const int trials = scaled_trials(500, scale, 100);
    const int n = 4;
    const double phi = 0.3;
    RngStream m_rng = root.child(3);
    ComplexMatrix m = gaussian_matrix(n, m_rng);
    double norm_m = operator_norm_estimate(m);
    double gamma = 0.1 * norm_m;
    ShatteringParams sp = shattering_parameters(norm_m, gamma, phi, n);
    RngStream t_rng = root.child(4);
    int hits = 0;
    for (int k = 0; k < trials; ++k) {
      RngStream trial = t_rng.child(static_cast<std::uint64_t>(k));
      ComplexMatrix pert = m + sample_ginibre(n, trial).scaled(gamma);
      if (verify::check_shattered(pert, sp.eps, sp.zeta, sp.zeta / 4.01)
              .verdict) {
        ++hits;
      }
    }
    double emp = static_cast<double>(hits) / trials;
    double needed = 1.0 - phi - 0.1;
    if (emp < needed) pass = false;
    d << "shattering: " << emp << " >= " << needed;
  }
  return make_result("C9 random-matrix tail bounds", pass, d);
}

CheckResult criterion_functional_calculus(double scale, std::uint64_t seed) {
  RngStream root(seed);
  const int trials = scaled_trials(100, scale, 10);
  int violations = 0;
  for (int k = 0; k < trials; ++k) {
    int n = 3 + (k % 3);
    RngStream trial = root.child(static_cast<std::uint64_t>(k));
    RngStream fixture = trial.child(0);
    ShatteredInstance inst = make_shattered_instance(n, fixture);
    double sigma = inst.global.norm_bound;
    double kappa = verify::kappa_v_surrogate(inst.H.matrix());
    verify::SpectralMeasure sm = verify::spectral_measure(inst.H);
    double slack = std::sqrt(static_cast<double>(n));

    RngStream shift_rng = trial.child(1);
    Complex s;
    double dist = 0.0;
    do {
      s = sample_disk(2.0 * sigma, shift_rng);
      dist = dist_to_spectrum(s, inst.spectrum);
    } while (dist < 0.1 * sigma);

    for (int m : {1, 4, 16}) {
      double lhs = resolvent_row_norm(inst.H, s, m);
      double expect = 0.0;
      for (size_t i = 0; i < sm.eigenvalues.size(); ++i) {
        expect += sm.masses[i] *
                  std::pow(std::abs(s - sm.eigenvalues[i]), -2.0 * m);
      }
      double mid = std::sqrt(expect);
      if (lhs / (slack * kappa) > mid * (1.0 + 1e-9)) ++violations;
      if (mid > slack * kappa * lhs * (1.0 + 1e-9)) ++violations;
    }
  }
  bool pass = violations == 0;
  std::ostringstream d;
  d << trials << " instances x {1,4,16} powers, violations " << violations;
  return make_result("C10 functional-calculus sandwich", pass, d);
}

std::vector<CheckResult> run_battery(double scale, std::uint64_t seed) {
  return {
      criterion_end_to_end(scale, seed),
      criterion_distspec_bracket(scale, seed + 1),
      criterion_oneeig_trace(scale, seed + 2),
      criterion_decouple(scale, seed + 3),
      criterion_net_covering(scale, seed + 4),
      criterion_anticoncentration(scale, seed + 5),
      criterion_precision_formulas(scale, seed + 6),
      criterion_cost_model(scale, seed + 7),
      criterion_tail_bounds(scale, seed + 8),
      criterion_functional_calculus(scale, seed + 9),
  };
}

}  // namespace smalleig::battery
