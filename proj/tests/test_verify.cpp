#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "smalleig/battery.hpp"
#include "smalleig/errors.hpp"
#include "smalleig/rng.hpp"
#include "smalleig/verify.hpp"

using namespace smalleig;
using namespace smalleig::verify;

namespace {

ComplexMatrix gaussian(int n, RngStream& rng) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

}  // namespace

TEST_CASE("oracle eigenvalues on closed-form inputs") {
  ComplexMatrix companion(2);
  companion(0, 1) = 1.0;
  companion(1, 0) = 1.0;  // z^2 - 1
  double md = matching_distance(
      oracle_eigenvalues(companion),
      std::vector<Complex>{Complex(1.0), Complex(-1.0)});
  CHECK(md <= 1e-12);

  std::vector<Complex> d = {Complex(1.0), Complex(2.0), Complex(3.0)};
  CHECK(matching_distance(oracle_eigenvalues(ComplexMatrix::diagonal(d)), d) <=
        1e-12);

  ComplexMatrix rot(2);
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  CHECK(matching_distance(
            oracle_eigenvalues(rot),
            std::vector<Complex>{Complex(0.0, 1.0), Complex(0.0, -1.0)}) <=
        1e-12);
}

TEST_CASE("matching distance basics") {
  std::vector<Complex> a = {Complex(1.0), Complex(2.0)};
  std::vector<Complex> b = {Complex(2.1), Complex(0.9)};
  CHECK(matching_distance(a, b) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(matching_distance(a, a) == 0.0);
  std::vector<Complex> c = {Complex(0.0), Complex(10.0)};
  std::vector<Complex> cr = {Complex(10.0), Complex(0.0)};
  CHECK(matching_distance(c, cr) == 0.0);
  std::vector<Complex> short_list = {Complex(1.0)};
  CHECK_THROWS_AS(matching_distance(a, short_list), CardinalityMismatch);
}

TEST_CASE("smallest singular value on pinned inputs") {
  std::vector<Complex> d = {Complex(3.0), Complex(0.5)};
  SigmaMin s = smallest_singular_value(ComplexMatrix::diagonal(d));
  CHECK(s.value == doctest::Approx(0.5).epsilon(1e-8));
  CHECK_FALSE(s.exactly_singular);

  ComplexMatrix rot(2);
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  CHECK(smallest_singular_value(rot).value == doctest::Approx(1.0).epsilon(1e-8));

  ComplexMatrix rank1(2);
  rank1(0, 0) = 1.0;
  SigmaMin z = smallest_singular_value(rank1);
  CHECK(z.value == 0.0);
  CHECK(z.exactly_singular);
}

TEST_CASE("shattering certificates") {
  std::vector<Complex> d01 = {Complex(0.0), Complex(1.0)};
  ShatteringCertificate good =
      check_shattered(ComplexMatrix::diagonal(d01), 0.01, 0.25, 0.25 / 4.0);
  CHECK(good.verdict);

  std::vector<Complex> dnear = {Complex(0.0), Complex(0.1)};
  ShatteringCertificate sep =
      check_shattered(ComplexMatrix::diagonal(dnear), 0.01, 0.25, 0.25 / 4.0);
  CHECK_FALSE(sep.verdict);

  ComplexMatrix jordan(2);
  jordan(0, 1) = 1.0;  // J_2(0): the 0.25-pseudospectrum reaches radius 0.5
  ShatteringCertificate wide = check_shattered(jordan, 0.25, 0.1, 0.1 / 4.0);
  CHECK_FALSE(wide.verdict);

  CHECK_THROWS_AS(check_shattered(ComplexMatrix::diagonal(d01), 0.01, 0.25, 0.2),
                  GridTooCoarse);
}

TEST_CASE("spectral measure on closed-form cases") {
  ComplexMatrix swap(2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  SpectralMeasure sm = spectral_measure(HessenbergMatrix(swap));
  CHECK(sm.masses[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(sm.masses[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(sm.masses[0] + sm.masses[1] == doctest::Approx(1.0).epsilon(1e-12));

  // Upper triangular: e_2 sees only the second eigenvector.
  ComplexMatrix tri(2);
  tri(0, 0) = 1.0;
  tri(0, 1) = 3.0;
  tri(1, 1) = 2.0;
  SpectralMeasure tm = spectral_measure(HessenbergMatrix(tri));
  for (size_t i = 0; i < 2; ++i) {
    if (std::abs(tm.eigenvalues[i] - Complex(1.0)) < 0.5) {
      CHECK(tm.masses[i] <= 1e-12);
    } else {
      CHECK(tm.masses[i] == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  ComplexMatrix one(1);
  one(0, 0) = Complex(5.0, 1.0);
  SpectralMeasure om = spectral_measure(HessenbergMatrix(one));
  CHECK(om.masses == std::vector<double>{1.0});
}

TEST_CASE("eigenvector condition surrogate") {
  ComplexMatrix swap(2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  CHECK(kappa_v_surrogate(swap) == doctest::Approx(1.0).epsilon(1e-10));

  ComplexMatrix shear(2);
  shear(0, 1) = 10.0;
  shear(1, 1) = 1.0;  // eigenvectors (1,0) and (10,1)/sqrt(101)
  CHECK(kappa_v_surrogate(shear) >= 10.0);

  std::vector<Complex> d = {Complex(2.0), Complex(-1.0), Complex(0.5, 0.5)};
  CHECK(kappa_v_surrogate(ComplexMatrix::diagonal(d)) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("minimum gap") {
  CHECK(min_gap(std::vector<Complex>{Complex(0.0), Complex(1.0), Complex(1.5)}) ==
        doctest::Approx(0.5));
  CHECK(min_gap(std::vector<Complex>{Complex(0.0, 1.0), Complex(0.0, -1.0)}) ==
        doctest::Approx(2.0));
  CHECK(min_gap(std::vector<Complex>{Complex(1.0), Complex(1.0)}) == 0.0);
  CHECK_THROWS_AS(min_gap(std::vector<Complex>{Complex(1.0)}),
                  TooFewEigenvalues);
}

TEST_CASE("certified instances satisfy the shattering consequences") {
  RngStream rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 3 + (trial % 3);
    RngStream fx = rng.child(static_cast<std::uint64_t>(trial));
    battery::ShatteredInstance inst = battery::make_shattered_instance(n, fx);
    double kappa_bound = n * inst.global.shattering_radius /
                         inst.global.pseudospectral_eps;
    CHECK(kappa_v_surrogate(inst.H.matrix()) <=
          std::sqrt(static_cast<double>(n)) * kappa_bound);
    CHECK(min_gap(inst.spectrum) >= inst.global.shattering_radius);
  }
}

TEST_CASE("pseudospectrum perturbation inclusion on a grid") {
  RngStream rng(37);
  RngStream gen = rng.child(0);
  ComplexMatrix m = gaussian(4, gen);
  RngStream egen = rng.child(1);
  ComplexMatrix e = gaussian(4, egen);
  double target = 0.01;
  e = e.scaled(Complex(target / largest_singular_value(e), 0.0));
  double norm_e = largest_singular_value(e);
  ComplexMatrix pert = m + e;
  const double eps = 0.2;
  RngStream grid = rng.child(2);
  for (int k = 0; k < 150; ++k) {
    Complex z(6.0 * grid.next_uniform01() - 3.0,
              6.0 * grid.next_uniform01() - 3.0);
    ComplexMatrix sp = pert.scaled(Complex(-1.0));
    sp.add_to_diagonal(z);
    // z in the (eps - ||E||)-pseudospectrum of M+E lies in the
    // eps-pseudospectrum of M.
    if (smallest_singular_value(sp).value <= eps - norm_e) {
      ComplexMatrix sm = m.scaled(Complex(-1.0));
      sm.add_to_diagonal(z);
      CHECK(smallest_singular_value(sm).value <= eps);
    }
  }
}

TEST_CASE("eigenvector condition tail under Ginibre regularization") {
  const int n = 4;
  const double gamma = 0.5;
  RngStream rng(41);
  RngStream gen = rng.child(0);
  ComplexMatrix m = gaussian(n, gen);
  m = m.scaled(Complex(2.0 / largest_singular_value(m), 0.0));
  double norm_m = 2.0;
  const double t = 0.005;
  REQUIRE(t < gamma / (norm_m * std::pow(n, 1.5)));
  double bound = 2.0 *
                 std::pow(2.0 * std::sqrt(2.0) + norm_m / gamma +
                              std::sqrt(4.0 * std::log(1.0 / t) / n),
                          2.0) *
                 std::pow(n, 3.0) * t * t;
  const int trials = 500;
  // The surrogate overshoots the infimum by at most sqrt(n), so exceedance
  // is counted against sqrt(n)/t to stay sound.
  double threshold = std::sqrt(static_cast<double>(n)) / t;
  int hits = 0;
  for (int k = 0; k < trials; ++k) {
    RngStream trial = rng.child(static_cast<std::uint64_t>(k + 1));
    ComplexMatrix x = m + sample_ginibre(n, trial).scaled(gamma);
    try {
      if (kappa_v_surrogate(x) >= threshold) ++hits;
    } catch (const DefectiveOrClustered&) {
      ++hits;  // count pathological draws against the bound
    }
  }
  double emp = static_cast<double>(hits) / trials;
  double sigma = std::sqrt(std::max(bound, 1e-6) / trials);
  CHECK(emp <= bound + 3.0 * sigma + 0.01);
}

TEST_CASE("gap Monte Carlo guards its preconditions") {
  RngStream rng(43);
  CHECK_THROWS_AS(monte_carlo_gap_bound(2, 1.0, 0.1, 10, rng),
                  ParameterOutOfRange);
  CHECK(monte_carlo_gap_bound(2, 1.0, 0.0, 1000, rng) == 0.0);
}

TEST_CASE("pseudospectrum grid flags exactly the near-eigenvalue points") {
  std::vector<Complex> d = {Complex(0.0), Complex(1.0)};
  ComplexMatrix m = ComplexMatrix::diagonal(d);
  std::vector<PseudospecSample> grid =
      pseudospectrum_grid(m, -0.5, 1.5, -0.5, 0.5, 0.05);
  const double eps = 0.1;
  for (const PseudospecSample& p : grid) {
    Complex z(p.re, p.im);
    double dist = std::min(std::abs(z), std::abs(z - Complex(1.0)));
    // normal matrix: sigma_min(z - M) = dist(z, spectrum)
    CHECK(p.sigma_min == doctest::Approx(dist).epsilon(1e-8));
    if (p.sigma_min <= eps) CHECK(dist <= eps + 1e-9);
    if (dist <= eps - 1e-9) CHECK(p.sigma_min <= eps);
  }
}
