#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "smalleig/driver.hpp"
#include "smalleig/errors.hpp"
#include "smalleig/io.hpp"
#include "smalleig/rng.hpp"
#include "smalleig/verify.hpp"

using namespace smalleig;

namespace {

ComplexMatrix gaussian(int n, RngStream& rng) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

int internal_vertices(const DeflationNode& node) {
  int c = node.dim > 1 ? 1 : 0;
  for (const DeflationNode& ch : node.children) c += internal_vertices(ch);
  return c;
}

}  // namespace

TEST_CASE("ledger formulas on the pinned configuration") {
  GlobalData g{4, 1.0, 1e-8, 1e-4};
  ParameterLedger ledger = compute_parameters(0.1, 0.1, g);
  CHECK(ledger.backward_target == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(ledger.decouple_threshold ==
        doctest::Approx(1e-8 / 12.0).epsilon(1e-14));
  CHECK(ledger.forward_accuracy ==
        doctest::Approx(1e-8 / 240.0).epsilon(1e-14));
  CHECK(ledger.mass_lower_bound ==
        doctest::Approx(4.8828125e-13).epsilon(1e-12));
  CHECK(ledger.oneeig_failure_tol == doctest::Approx(0.0125).epsilon(1e-14));
  CHECK(ledger.m2 <= ledger.m1);
}

TEST_CASE("the min branch of the decouple threshold") {
  GlobalData g{5, 2.0, 1.0, 0.5};
  ParameterLedger ledger = compute_parameters(0.05, 0.1, g);
  // Delta = 0.05 < eps = 1
  CHECK(ledger.decouple_threshold == doctest::Approx(0.05 / 15.0).epsilon(1e-14));
}

TEST_CASE("the decouple budget never exceeds the distspec budget") {
  RngStream rng(3);
  for (int k = 0; k < 1000; ++k) {
    int n = 2 + static_cast<int>(rng.next_uniform01() * 14.99);
    double sigma = 0.3 + 10.0 * rng.next_uniform01();
    double phi = 0.01 + 0.45 * rng.next_uniform01();
    double delta = 0.01 + 0.9 * rng.next_uniform01();
    double gamma = sigma * (0.02 + 0.4 * rng.next_uniform01());
    ShatteringParams sp = shattering_parameters(sigma, gamma, phi, n);
    GlobalData g{n, sigma, sp.eps, sp.zeta};
    ParameterLedger ledger = compute_parameters(delta, phi, g);
    CHECK(ledger.m2 <= ledger.m1);
  }
}

TEST_CASE("shattering parameters on the pinned configuration") {
  ShatteringParams sp = shattering_parameters(1.0, 0.01, 0.1, 4);
  CHECK(sp.zeta == doctest::Approx(1.141e-4).epsilon(1e-3));
  CHECK(sp.eps == doctest::Approx(2.665e-10).epsilon(1e-3));

  ShatteringParams sp2 = shattering_parameters(1.0, 0.02, 0.1, 4);
  CHECK(sp2.zeta == doctest::Approx(2.0 * sp.zeta).epsilon(1e-12));
  CHECK(sp2.eps == doctest::Approx(4.0 * sp.eps).epsilon(1e-12));

  ShatteringParams sp3 = shattering_parameters(1.0, 0.01, 0.05, 4);
  CHECK(sp3.zeta < sp.zeta);
  CHECK(sp3.eps < sp.eps);

  CHECK_THROWS_AS(shattering_parameters(1.0, 0.6, 0.1, 4), ParameterOutOfRange);
  CHECK_THROWS_AS(shattering_parameters(1.0, 0.01, 0.7, 4), ParameterOutOfRange);
}

TEST_CASE("preprocess matches the hand-computed scale constants") {
  // n = 4, phi = 0.1: W = 2 sqrt(2) + (1/2) sqrt(ln 60)
  double w_expect = 2.0 * std::sqrt(2.0) + 0.5 * std::sqrt(std::log(60.0));
  ComplexMatrix m(4);
  m(0, 0) = 2.0;  // norm estimate is exactly 2 via the mixed bound
  m(1, 1) = 0.2;
  m(2, 2) = 0.1;
  m(3, 3) = 0.1;
  RngStream rng(5);
  PreprocessResult pre = preprocess(m, 0.1, 0.1, rng);
  CHECK(pre.ledger.ginibre_norm_bound == doctest::Approx(w_expect).epsilon(1e-12));
  CHECK(pre.ledger.ginibre_scale ==
        doctest::Approx(0.1 * 2.0 / (4.0 * w_expect)).epsilon(1e-12));
  CHECK(pre.global.dimension == 4);
  CHECK(pre.global.pseudospectral_eps > 0.0);
}

TEST_CASE("perturbation stays below delta norm over two with high probability") {
  const int n = 4;
  const double delta = 0.2, phi = 0.3;
  RngStream rng(7);
  RngStream gen = rng.child(0);
  ComplexMatrix m = gaussian(n, gen);
  double norm_m = verify::largest_singular_value(m);
  const int trials = 2000;
  int good = 0;
  for (int k = 0; k < trials; ++k) {
    RngStream trial = rng.child(static_cast<std::uint64_t>(k + 1));
    PreprocessResult pre = preprocess(m, delta, phi, trial);
    double moved = verify::largest_singular_value(pre.perturbed - m);
    if (moved <= delta * norm_m / 2.0) ++good;
  }
  double frac = static_cast<double>(good) / trials;
  CHECK(frac >= 1.0 - phi / 3.0 - 0.03);
}

TEST_CASE("scalar base case bypasses every subroutine") {
  ComplexMatrix m(1);
  m(0, 0) = Complex(3.0, 4.0);
  GlobalData g{1, 5.0, 1e-6, 1e-3};
  RngStream rng(9);
  EigenReport rep = small_eig(m, 0.1, 0.1, g, rng);
  REQUIRE(rep.eigenvalues.size() == 1);
  CHECK(rep.eigenvalues[0] == Complex(3.0, 4.0));
  CHECK(rep.budget_used == 0);
}

TEST_CASE("end-to-end solve tracks the perturbed spectrum") {
  std::vector<Complex> d = {Complex(1.0), Complex(2.0), Complex(3.0)};
  ComplexMatrix m = ComplexMatrix::diagonal(d);
  RngStream rng(11);
  SolveOutcome out = solve(m, 0.05, 0.2, rng);
  REQUIRE(out.report.eigenvalues.size() == 3);
  double md = verify::matching_distance(out.report.eigenvalues,
                                        verify::oracle_eigenvalues(out.perturbed));
  CHECK(md <= 0.05);
  CHECK(out.report.retries == 0);
  CHECK(out.report.budget_used <= 3 * (3 - 1));
  CHECK(internal_vertices(out.report.tree) <= 2);
}

TEST_CASE("solve is deterministic in the seed") {
  RngStream gen(13);
  ComplexMatrix m = gaussian(4, gen);
  RngStream r1(77), r2(77);
  SolveOutcome a = solve(m, 0.05, 0.2, r1);
  SolveOutcome b = solve(m, 0.05, 0.2, r2);
  CHECK(report_to_json_string(a.report) == report_to_json_string(b.report));
  RngStream r3(78);
  SolveOutcome c = solve(m, 0.05, 0.2, r3);
  CHECK(report_to_json_string(a.report) != report_to_json_string(c.report));
}

TEST_CASE("forward wrapper hits forward accuracy on a gapped normal matrix") {
  std::vector<Complex> d = {Complex(0.0), Complex(1.0)};
  ComplexMatrix m = ComplexMatrix::diagonal(d);
  RngStream rng(17);
  EigenReport rep = forward_eig(m, 0.1, 0.2, rng);
  REQUIRE(rep.eigenvalues.size() == 2);
  double norm_m = 1.0;
  double md = verify::matching_distance(
      rep.eigenvalues, std::vector<Complex>{Complex(0.0), Complex(1.0)});
  CHECK(md <= 0.1 * norm_m);
  CHECK_THROWS_AS(forward_eig(m, 1.5, 0.2, rng), ParameterOutOfRange);
}

TEST_CASE("required precision is a sane, monotone report") {
  GlobalData g{4, 1.0, 1e-8, 1e-4};
  long prev = 0;
  for (double delta : {0.4, 0.1, 0.01}) {
    ParameterLedger ledger = compute_parameters(delta, 0.1, g);
    PrecisionRequirement req = required_precision(ledger, g);
    CHECK(req.bits >= 53);
    CHECK(req.bits >= prev);
    prev = req.bits;
  }
  CHECK(required_precision(compute_parameters(0.1, 0.1, g), g).asymptotic ==
        "O(log^2(n/(delta*phi)))");
}

TEST_CASE("theory mode refuses at hardware width and reports the need") {
  std::vector<Complex> d = {Complex(1.0), Complex(2.0)};
  ComplexMatrix m = ComplexMatrix::diagonal(d);
  GlobalData g{2, 2.0, 1e-8, 1e-4};
  RngStream rng(19);
  SolveOptions opt;
  opt.mode = SolveMode::theory;
  try {
    small_eig(m, 0.1, 0.1, g, rng, opt);
    FAIL("theory mode must refuse at 53 bits");
  } catch (const PrecisionInsufficient& e) {
    CHECK(e.required_bits > 53);
  }
}

TEST_CASE("degenerate inputs are rejected") {
  RngStream rng(23);
  CHECK_THROWS_AS(solve(ComplexMatrix(3), 0.1, 0.1, rng), ZeroMatrix);
  GlobalData g{2, 1.0, 1e-6, 1e-3};
  std::vector<Complex> d = {Complex(1.0), Complex(2.0)};
  ComplexMatrix m = ComplexMatrix::diagonal(d);
  CHECK_THROWS_AS(small_eig(m, 1.5, 0.1, g, rng), ParameterOutOfRange);
  CHECK_THROWS_AS(small_eig(m, 0.1, 0.0, g, rng), ParameterOutOfRange);
}

TEST_CASE("eigenvalue count, budget and tree shape on larger instances") {
  RngStream rng(29);
  for (int n : {5, 8}) {
    RngStream trial = rng.child(static_cast<std::uint64_t>(n));
    RngStream gen = trial.child(0);
    ComplexMatrix m = gaussian(n, gen);
    RngStream solver = trial.child(1);
    SolveOutcome out = solve(m, 0.05, 0.2, solver);
    CHECK(static_cast<int>(out.report.eigenvalues.size()) == n);
    CHECK(internal_vertices(out.report.tree) <= n - 1);
    if (out.report.retries == 0) {
      CHECK(out.report.budget_used <= 3 * (n - 1));
    }
    CHECK(out.report.required_bits > 53);
  }
}
