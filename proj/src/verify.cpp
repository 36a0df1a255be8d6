#include "smalleig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "smalleig/errors.hpp"
#include "verify_internal.hpp"

namespace smalleig::verify {

namespace detail {

LuFactors::LuFactors(const ComplexMatrix& a)
    : lu(a), perm(static_cast<size_t>(a.dim())), exactly_singular(false) {
  const int n = a.dim();
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) {
      exactly_singular = true;
      continue;
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(piv)]);
    }
    for (int i = k + 1; i < n; ++i) {
      Complex f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
}

std::vector<Complex> LuFactors::solve(std::span<const Complex> b) const {
  const int n = lu.dim();
  std::vector<Complex> y(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] = b[static_cast<size_t>(perm[static_cast<size_t>(i)])];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) y[static_cast<size_t>(i)] -= lu(i, j) * y[static_cast<size_t>(j)];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) y[static_cast<size_t>(i)] -= lu(i, j) * y[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] /= lu(i, i);
  }
  return y;
}

namespace {

double vec_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

bool vec_finite(std::span<const Complex> v) {
  for (const Complex& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace

std::vector<Complex> unit_eigenvector(const ComplexMatrix& m, Complex lambda) {
  const int n = m.dim();
  ComplexMatrix shifted = m;
  shifted.add_to_diagonal(-lambda);
  LuFactors f(shifted);
  if (f.exactly_singular) {
    // Nudge off the exact singularity; the eigendirection is unchanged to
    // working accuracy.
    double scale = std::max(m.frobenius_norm(), 1e-30);
    shifted.add_to_diagonal(Complex(1e-14 * scale, 1e-14 * scale));
    f = LuFactors(shifted);
  }
  std::vector<Complex> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<size_t>(i)] = Complex(1.0, 0.2 * (i % 5));
  }
  double nx = vec_norm(x);
  for (Complex& z : x) z /= nx;
  for (int it = 0; it < 4; ++it) {
    std::vector<Complex> y = f.solve(x);
    if (!vec_finite(y)) break;
    double ny = vec_norm(y);
    if (ny == 0.0) break;
    for (Complex& z : y) z /= ny;
    x = std::move(y);
  }
  return x;
}

}  // namespace detail

using detail::LuFactors;

double matching_distance(std::span<const Complex> a,
                         std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw CardinalityMismatch("matching_distance needs equal multiset sizes");
  }
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0.0;
  std::vector<double> d(static_cast<size_t>(n) * n);
  std::vector<double> values;
  values.reserve(d.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(j)]);
      d[static_cast<size_t>(i) * n + j] = v;
      values.push_back(v);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Perfect matching restricted to pairs with distance <= cap (Kuhn).
  auto feasible = [&](double cap) {
    std::vector<int> match_of_b(static_cast<size_t>(n), -1);
    std::vector<char> seen(static_cast<size_t>(n));
    std::function<bool(int)> augment = [&](int i) -> bool {
      for (int j = 0; j < n; ++j) {
        if (seen[static_cast<size_t>(j)]) continue;
        if (d[static_cast<size_t>(i) * n + j] > cap) continue;
        seen[static_cast<size_t>(j)] = 1;
        int& owner = match_of_b[static_cast<size_t>(j)];
        if (owner < 0 || augment(owner)) {
          owner = i;
          return true;
        }
      }
      return false;
    };
    for (int i = 0; i < n; ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      if (!augment(i)) return false;
    }
    return true;
  };

  size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (feasible(values[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return values[lo];
}

SigmaMin smallest_singular_value(const ComplexMatrix& M) {
  const int n = M.dim();
  LuFactors fa(M);
  if (fa.exactly_singular) return {0.0, true};
  LuFactors fah(M.adjoint());
  if (fah.exactly_singular) return {0.0, true};

  std::vector<Complex> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = Complex(1.0, 0.0);
  double nx = detail::vec_norm(x);
  for (Complex& z : x) z /= nx;

  double sigma = 0.0, prev = -1.0;
  for (int it = 0; it < 400; ++it) {
    std::vector<Complex> t = fah.solve(x);
    if (!detail::vec_finite(t)) return {0.0, false};
    std::vector<Complex> z = fa.solve(t);
    if (!detail::vec_finite(z)) return {0.0, false};
    double nz = detail::vec_norm(z);
    if (nz == 0.0) return {0.0, false};
    for (Complex& w : z) w /= nz;
    x = std::move(z);
    sigma = detail::vec_norm(M.apply(x));
    if (prev >= 0.0 && std::abs(sigma - prev) <= 1e-10 * sigma) break;
    prev = sigma;
  }
  return {sigma, false};
}

double largest_singular_value(const ComplexMatrix& M) {
  const int n = M.dim();
  double best = 0.0;
  for (int start = 0; start < 3; ++start) {
    std::vector<Complex> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      double a = 1.0 + 0.31 * start * (i + 1);
      x[static_cast<size_t>(i)] = Complex(std::cos(a), std::sin(0.7 * a));
    }
    double prev = -1.0;
    for (int it = 0; it < 400; ++it) {
      double nx = detail::vec_norm(x);
      if (nx == 0.0) break;
      for (Complex& z : x) z /= nx;
      std::vector<Complex> y = M.apply(x);
      double sigma = detail::vec_norm(y);
      best = std::max(best, sigma);
      if (prev >= 0.0 && std::abs(sigma - prev) <= 1e-13 * sigma) break;
      prev = sigma;
      x = M.apply_adjoint(y);
    }
  }
  return best;
}

namespace {

double eig_scale(std::span<const Complex> eigs) {
  double s = 0.0;
  for (const Complex& z : eigs) s = std::max(s, std::abs(z));
  return s;
}

std::vector<std::vector<Complex>> eigenvector_columns(
    const ComplexMatrix& M, std::span<const Complex> eigs) {
  double scale = std::max(eig_scale(eigs), 1e-300);
  if (eigs.size() >= 2 && min_gap(eigs) <= 1e-10 * scale) {
    throw DefectiveOrClustered(
        "eigenvalues too clustered for eigenvector computation");
  }
  std::vector<std::vector<Complex>> cols;
  cols.reserve(eigs.size());
  for (const Complex& lambda : eigs) {
    cols.push_back(detail::unit_eigenvector(M, lambda));
  }
  return cols;
}

}  // namespace

SpectralMeasure spectral_measure(const HessenbergMatrix& H) {
  const int n = H.dim();
  if (n == 1) return {{H(0, 0)}, {1.0}};
  std::vector<Complex> eigs = oracle_eigenvalues(H.matrix());
  std::vector<std::vector<Complex>> cols = eigenvector_columns(H.matrix(), eigs);
  std::vector<double> masses(static_cast<size_t>(n));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double w = std::norm(cols[static_cast<size_t>(i)][static_cast<size_t>(n - 1)]);
    masses[static_cast<size_t>(i)] = w;
    total += w;
  }
  if (total == 0.0) {
    throw DefectiveOrClustered("e_n has no weight in the eigenbasis");
  }
  for (double& w : masses) w /= total;
  return {std::move(eigs), std::move(masses)};
}

double kappa_v_surrogate(const ComplexMatrix& M) {
  const int n = M.dim();
  if (n == 1) return 1.0;
  std::vector<Complex> eigs = oracle_eigenvalues(M);
  std::vector<std::vector<Complex>> cols = eigenvector_columns(M, eigs);
  ComplexMatrix V(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) V(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
  SigmaMin smin = smallest_singular_value(V);
  if (smin.value == 0.0) {
    throw DefectiveOrClustered("eigenvector matrix numerically singular");
  }
  return largest_singular_value(V) / smin.value;
}

double min_gap(std::span<const Complex> eigs) {
  if (eigs.size() < 2) throw TooFewEigenvalues("min_gap needs >= 2 values");
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < eigs.size(); ++i)
    for (size_t j = i + 1; j < eigs.size(); ++j)
      best = std::min(best, std::abs(eigs[i] - eigs[j]));
  return best;
}

ShatteringCertificate check_shattered(const ComplexMatrix& M, double eps,
                                      double zeta, double grid_step) {
  if (!(eps > 0.0) || !(zeta > 0.0)) {
    throw NonPositiveParameter("check_shattered needs positive eps and zeta");
  }
  if (!(grid_step > 0.0) || grid_step > zeta / 4.0 * (1.0 + 1e-12)) {
    throw GridTooCoarse("grid step must be positive and at most zeta/4");
  }
  ShatteringCertificate cert;
  cert.centers = oracle_eigenvalues(M);
  cert.radius = zeta;
  cert.eps = eps;
  cert.verdict = true;

  const int n = M.dim();
  for (int i = 0; i < n && cert.verdict; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // dist(D_i, D_j) >= zeta needs centers 3 zeta apart.
      if (std::abs(cert.centers[static_cast<size_t>(i)] -
                   cert.centers[static_cast<size_t>(j)]) < 3.0 * zeta) {
        cert.verdict = false;
        break;
      }
    }
  }
  if (!cert.verdict) return cert;

  // Containment: certify sigma_min(z - M) > eps on an annular band around
  // each disk boundary. sigma_min is 1-Lipschitz in z and every component of
  // the eps-pseudospectrum contains an eigenvalue (a disk center), so a
  // certified band blocks any escape from the disk union.
  const double h = grid_step;
  const double margin = 0.37 * h;
  for (const Complex& c : cert.centers) {
    for (int ring = 0; ring <= 4 && cert.verdict; ++ring) {
      double r = zeta + 0.5 * h * ring;
      int arcs = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * r / (0.5 * h))));
      for (int a = 0; a < arcs; ++a) {
        double angle = 2.0 * M_PI * a / arcs;
        Complex z = c + Complex(r * std::cos(angle), r * std::sin(angle));
        ComplexMatrix shifted = M.scaled(Complex(-1.0, 0.0));
        shifted.add_to_diagonal(z);
        if (smallest_singular_value(shifted).value <= eps + margin) {
          cert.verdict = false;
          break;
        }
      }
    }
    if (!cert.verdict) break;
  }
  return cert;
}

double monte_carlo_gap_bound(int n, double gamma, double t, int trials,
                             RngStream& rng) {
  if (trials < 1000) {
    throw ParameterOutOfRange("gap Monte Carlo needs at least 10^3 trials");
  }
  if (!(gamma > 0.0) || t < 0.0) {
    throw ParameterOutOfRange("gap Monte Carlo needs gamma > 0, t >= 0");
  }
  int hits = 0;
  for (int k = 0; k < trials; ++k) {
    RngStream trial = rng.child(static_cast<std::uint64_t>(k));
    ComplexMatrix g = sample_ginibre(n, trial).scaled(gamma);
    std::vector<Complex> eigs = oracle_eigenvalues(g);
    if (n >= 2 && min_gap(eigs) <= t) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

std::vector<PseudospecSample> pseudospectrum_grid(const ComplexMatrix& M,
                                                  double re_min, double re_max,
                                                  double im_min, double im_max,
                                                  double step) {
  if (!(step > 0.0) || re_max < re_min || im_max < im_min) {
    throw ParameterOutOfRange("invalid pseudospectrum grid box");
  }
  std::vector<PseudospecSample> out;
  for (double im = im_min; im <= im_max + 0.5 * step; im += step) {
    for (double re = re_min; re <= re_max + 0.5 * step; re += step) {
      ComplexMatrix shifted = M.scaled(Complex(-1.0, 0.0));
      shifted.add_to_diagonal(Complex(re, im));
      out.push_back({re, im, smallest_singular_value(shifted).value});
    }
  }
  return out;
}

}  // namespace smalleig::verify
