#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "smalleig/hessenberg.hpp"
#include "smalleig/matrix.hpp"
#include "smalleig/rng.hpp"
#include "smalleig/verify.hpp"

using namespace smalleig;

namespace {

ComplexMatrix reflector_matrix(const HouseholderReflector& r, int n) {
  ComplexMatrix p = ComplexMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      p(i, j) -= r.beta * r.v[static_cast<size_t>(i)] *
                 std::conj(r.v[static_cast<size_t>(j)]);
  return p;
}

ComplexMatrix gaussian(int n, RngStream& rng) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

}  // namespace

TEST_CASE("2x2 inputs are fixed points") {
  ComplexMatrix m(2);
  m(0, 0) = Complex(1.0, 2.0);
  m(0, 1) = Complex(-0.5, 0.1);
  m(1, 0) = Complex(0.3, 0.0);
  m(1, 1) = Complex(2.0, -1.0);
  HessReduction red = hess_bu(m);
  CHECK(red.reflectors.empty());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(red.H(i, j) == m(i, j));
}

TEST_CASE("all-ones 3x3 spectrum survives reduction") {
  ComplexMatrix ones(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ones(i, j) = 1.0;
  HessReduction red = hess_bu(ones);
  CHECK(is_hessenberg(red.H.matrix()));
  std::vector<Complex> expect = {Complex(3.0), Complex(0.0), Complex(0.0)};
  double md = verify::matching_distance(
      verify::oracle_eigenvalues(red.H.matrix()), expect);
  CHECK(md <= 1e-12);
}

TEST_CASE("explicit accumulation reconstructs the input") {
  RngStream rng(71);
  const int n = 6;
  ComplexMatrix m = gaussian(n, rng);
  HessReduction red = hess_bu(m);

  // H = Q* M Q with Q the reflector product in application order.
  ComplexMatrix q = ComplexMatrix::identity(n);
  for (const HouseholderReflector& r : red.reflectors) {
    q = q * reflector_matrix(r, n);
  }
  ComplexMatrix qhq = q.adjoint() * m * q;
  double norm_m = m.frobenius_norm();
  CHECK((q.adjoint() * q - ComplexMatrix::identity(n)).frobenius_norm() <= 1e-13);
  CHECK((red.H.matrix() - qhq).frobenius_norm() <= 1e-12 * norm_m);

  // Q e_n = e_n exactly: every reflector has zero weight on e_n.
  for (int i = 0; i < n; ++i) {
    CHECK(q(i, n - 1) == ((i == n - 1) ? Complex(1.0) : Complex(0.0)));
  }
}

TEST_CASE("randomized form: dimension one is untouched") {
  ComplexMatrix one(1);
  one(0, 0) = Complex(4.0, -2.0);
  RngStream rng(73);
  HessenbergMatrix h = rhess(one, rng);
  CHECK(h(0, 0) == one(0, 0));
}

TEST_CASE("randomized form preserves the spectrum") {
  RngStream rng(79);
  for (int n : {3, 5, 8}) {
    RngStream t = rng.child(static_cast<std::uint64_t>(n));
    RngStream gen = t.child(0);
    ComplexMatrix m = gaussian(n, gen);
    RngStream hs = t.child(1);
    HessenbergMatrix h = rhess(m, hs);
    CHECK(is_hessenberg(h.matrix()));
    double md = verify::matching_distance(verify::oracle_eigenvalues(m),
                                          verify::oracle_eigenvalues(h.matrix()));
    CHECK(md <= 1e-11 * m.frobenius_norm());
  }
}

TEST_CASE("composite conjugation maps e_n to the sampled vector") {
  RngStream rng(83);
  for (int n : {3, 5, 6}) {
    RngStream t = rng.child(static_cast<std::uint64_t>(n));
    RngStream gen = t.child(0);
    ComplexMatrix m = gaussian(n, gen);
    RngStream hs = t.child(1);
    RhessDetail det = rhess_detailed(m, hs);
    REQUIRE_FALSE(det.initial_skipped);

    ComplexMatrix p = reflector_matrix(det.initial, n);
    ComplexMatrix q = ComplexMatrix::identity(n);
    for (const HouseholderReflector& r : det.reduction_reflectors) {
      q = q * reflector_matrix(r, n);
    }
    // e_n* (Q* P) = u*
    ComplexMatrix qp = q.adjoint() * p;
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(qp(n - 1, j) - std::conj(det.u[static_cast<size_t>(j)])) <=
            1e-12);
    }
  }
}

TEST_CASE("randomized form is deterministic under a fixed stream") {
  RngStream rng(89);
  RngStream gen = rng.child(0);
  ComplexMatrix m = gaussian(5, gen);
  RngStream s1 = rng.child(1);
  RngStream s2 = rng.child(1);
  HessenbergMatrix h1 = rhess(m, s1);
  HessenbergMatrix h2 = rhess(m, s2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(h1(i, j) == h2(i, j));
}

TEST_CASE("below-subdiagonal entries are literal zeros") {
  RngStream rng(97);
  ComplexMatrix m = gaussian(8, rng);
  HessReduction red = hess_bu(m);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j + 1 < i; ++j) CHECK(red.H(i, j) == Complex(0.0));
}

TEST_CASE("spectral-measure mass lower bound from the random form") {
  // diag(1, -1) is normal with gap 2; certified shattering for it.
  std::vector<Complex> d = {Complex(1.0), Complex(-1.0)};
  ComplexMatrix m = ComplexMatrix::diagonal(d);
  const double zeta = 0.5;
  const double eps = 0.05;
  REQUIRE(verify::check_shattered(m, eps, zeta, zeta / 4.01).verdict);

  const double t = 0.1;
  const int n = 2;
  double eps_eff = eps;  // the reduction erosion is ~1e-15 here
  double threshold = std::pow(eps_eff * t / (std::pow(n, 1.5) * zeta), 2);
  const int trials = 2000;
  int good = 0;
  RngStream rng(101);
  for (int k = 0; k < trials; ++k) {
    RngStream trial = rng.child(static_cast<std::uint64_t>(k));
    HessenbergMatrix h = rhess(m, trial);
    verify::SpectralMeasure sm = verify::spectral_measure(h);
    double p_min = 1.0;
    for (double w : sm.masses) p_min = std::min(p_min, w);
    if (p_min >= threshold) ++good;
  }
  double frac = static_cast<double>(good) / trials;
  CHECK(frac >= 1.0 - n * t * t - 0.04);
}
