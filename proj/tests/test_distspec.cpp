#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "smalleig/battery.hpp"
#include "smalleig/distspec.hpp"
#include "smalleig/errors.hpp"
#include "smalleig/rng.hpp"
#include "smalleig/verify.hpp"

using namespace smalleig;

namespace {

HessenbergMatrix swap2() {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return HessenbergMatrix(m);
}

}  // namespace

TEST_CASE("degree formula on pinned ratios") {
  // n zeta / eps = e, p = 1
  CHECK(choose_m(1.0, std::exp(1.0), 1, 1.0) == 12);
  // n zeta / eps = 1, p = 1: formula gives 0, clamped to 1
  CHECK(choose_m(1.0, 1.0, 1, 1.0) == 1);
  // n zeta / eps = e^2, p = e^{-2}
  CHECK(choose_m(1.0, std::exp(2.0), 1, std::exp(-2.0)) == 36);
  CHECK_THROWS_AS(choose_m(0.0, 1.0, 1, 1.0), NonPositiveParameter);
  CHECK_THROWS_AS(choose_m(1.0, 1.0, 1, 2.0), NonPositiveParameter);
}

TEST_CASE("degree formula is monotone in each direction") {
  RngStream rng(5);
  for (int k = 0; k < 50; ++k) {
    double eps = std::pow(10.0, -6.0 * rng.next_uniform01() - 1.0);
    double zeta = 0.1 + rng.next_uniform01();
    int n = 2 + static_cast<int>(rng.next_uniform01() * 10);
    double p = std::pow(10.0, -4.0 * rng.next_uniform01());
    int base = choose_m(eps, zeta, n, p);
    CHECK(choose_m(eps / 2.0, zeta, n, p) >= base);
    CHECK(choose_m(eps, 2.0 * zeta, n, p) >= base);
    CHECK(choose_m(eps, zeta, n + 1, p) >= base);
    CHECK(choose_m(eps, zeta, n, p / 2.0) >= base);
  }
}

TEST_CASE("scalar matrix distance is exact up to tolerance") {
  ComplexMatrix one(1);
  one(0, 0) = Complex(0.7, -1.1);
  HessenbergMatrix h(one);
  Complex s = one(0, 0) + Complex(2.0, 0.0);
  for (int m : {1, 5, 17}) {
    CHECK(dist_spec(h, s, m).tau == doctest::Approx(2.0).epsilon(3e-3));
  }
}

TEST_CASE("swap matrix brackets at the right degree") {
  double t40 = dist_spec(swap2(), Complex(3.0), 40).tau;
  CHECK(t40 >= 1.8);
  CHECK(t40 <= 2.2);
  // Degree 1 is too small: still within [2, 4] but outside the 10% bracket.
  double t1 = dist_spec(swap2(), Complex(3.0), 1).tau;
  CHECK(t1 >= 2.0);
  CHECK(t1 <= 4.0);
  CHECK(t1 > 2.2);
}

TEST_CASE("net geometry") {
  RngStream rng(7);
  NetPoints net = build_net(Complex(0.0), 1.0, 0.0, rng);
  CHECK(net.w == Complex(0.0));
  for (int l = 1; l <= 6; ++l) {
    Complex expect(std::cos(M_PI * l / 3.0), std::sin(M_PI * l / 3.0));
    CHECK(std::abs(net.points[static_cast<size_t>(l - 1)] - expect) <= 1e-15);
  }
  // consecutive points subtend pi/3 at the center
  for (int l = 0; l < 6; ++l) {
    Complex a = net.points[static_cast<size_t>(l)];
    Complex b = net.points[static_cast<size_t>((l + 1) % 6)];
    double angle = std::arg(b / a);
    CHECK(std::abs(std::abs(angle) - M_PI / 3.0) <= 1e-12);
  }

  NetPoints shifted = build_net(Complex(5.0, 5.0), 2.0, 0.0, rng);
  for (int l = 1; l <= 6; ++l) {
    Complex expect = Complex(5.0, 5.0) +
                     2.0 * Complex(std::cos(M_PI * l / 3.0),
                                   std::sin(M_PI * l / 3.0));
    CHECK(std::abs(shifted.points[static_cast<size_t>(l - 1)] - expect) <= 1e-14);
  }
}

TEST_CASE("net covering of the annulus (spot check)") {
  RngStream rng(9);
  const Complex s(1.0, -2.0);
  const double tau = 0.8;
  for (int k = 0; k < 2000; ++k) {
    RngStream t = rng.child(static_cast<std::uint64_t>(k));
    NetPoints net = build_net(s, tau, 0.03 * tau, t);
    double r = tau * (0.9 + 0.22 * t.next_uniform01());
    double a = 2.0 * M_PI * t.next_uniform01();
    Complex z = s + Complex(r * std::cos(a), r * std::sin(a));
    double best = 1e9;
    for (const Complex& p : net.points) best = std::min(best, std::abs(z - p));
    CHECK(best <= 0.6 * tau);
  }
}

TEST_CASE("shift regularization support and probability") {
  RngStream rng(11);
  CHECK(regularize_shift(Complex(2.0, 3.0), 0.0, rng) == Complex(2.0, 3.0));
  for (int k = 0; k < 1000; ++k) {
    Complex out = regularize_shift(Complex(1.0), 0.5, rng);
    CHECK(std::abs(out - Complex(1.0)) <= 0.5);
  }
  // Spectrum {0}: the perturbed shift misses D(0, eta1) with probability
  // at least 1 - (eta1/eta2)^2.
  const double eta2 = 1.0, eta1 = 0.1;
  const int trials = 100000;
  int good = 0;
  for (int k = 0; k < trials; ++k) {
    if (std::abs(regularize_shift(Complex(0.0), eta2, rng)) >= eta1) ++good;
  }
  double frac = static_cast<double>(good) / trials;
  CHECK(frac >= 1.0 - (eta1 / eta2) * (eta1 / eta2) - 0.01);
}

TEST_CASE("two-sided bracket on certified instances (spot check)") {
  RngStream rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + (trial % 3);
    RngStream t = rng.child(static_cast<std::uint64_t>(trial));
    RngStream fx = t.child(0);
    battery::ShatteredInstance inst = battery::make_shattered_instance(n, fx);
    RngStream sr = t.child(1);
    Complex s;
    double d = 0.0;
    do {
      s = sample_disk(2.0 * inst.global.norm_bound, sr);
      d = 1e9;
      for (const Complex& z : inst.spectrum) d = std::min(d, std::abs(s - z));
    } while (d < 1e-4 * inst.global.norm_bound);
    int m = choose_m(inst.global.pseudospectral_eps,
                     inst.global.shattering_radius, n, inst.p_min);
    double tau = dist_spec(inst.H, s, m).tau;
    CHECK(tau >= 0.9 * d);
    CHECK(tau <= 1.1 * d);
  }
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(dist_spec(swap2(), Complex(3.0), 0), NonPositiveParameter);
  RngStream rng(1);
  CHECK_THROWS_AS(build_net(Complex(0.0), 0.0, 0.0, rng), NonPositiveParameter);
}
