#pragma once

#include <span>
#include <vector>

#include "smalleig/matrix.hpp"
#include "smalleig/rng.hpp"

namespace smalleig::verify {

// Independent reference eigensolver for desk-scale matrices (n <= 64):
// characteristic polynomial by the Hessenberg determinant recurrence at
// 240-bit precision, simultaneous root iteration, and a working-precision
// sigma_min residual check on every root. Shares no code with the iqr or
// driver path.
std::vector<Complex> oracle_eigenvalues(const ComplexMatrix& M);

// Optimal bottleneck matching: min over bijections of max |a_i - b_sigma(i)|.
double matching_distance(std::span<const Complex> a, std::span<const Complex> b);

struct SigmaMin {
  double value;
  bool exactly_singular;
};

// Smallest singular value to relative 1e-8 by inverse iteration on the Gram
// matrix, deterministic start, residual-verified.
SigmaMin smallest_singular_value(const ComplexMatrix& M);

// Largest singular value (power iteration, deterministic starts).
double largest_singular_value(const ComplexMatrix& M);

struct SpectralMeasure {
  std::vector<Complex> eigenvalues;
  std::vector<double> masses;  // |e_n* V e_i|^2 / ||e_n* V||^2, summing to 1
};

// Masses of the random eigenvalue seen by inverse iteration from e_n,
// computed from a column-normalized eigenvector matrix.
SpectralMeasure spectral_measure(const HessenbergMatrix& H);

// ||V|| ||V^{-1}|| for the column-normalized eigenvector matrix: an upper
// surrogate for the infimal eigenvector condition number, within sqrt(n).
double kappa_v_surrogate(const ComplexMatrix& M);

double min_gap(std::span<const Complex> eigs);

struct ShatteringCertificate {
  std::vector<Complex> centers;
  double radius;  // zeta
  double eps;
  bool verdict;
};

// Disks of radius zeta at the oracle eigenvalues; separation is checked on
// the centers, containment by certifying sigma_min(z - M) > eps + margin on
// annulus grids around each disk boundary (sound via the 1-Lipschitz map
// z -> sigma_min(z - M): every pseudospectral component contains an
// eigenvalue, so escape would cross a certified band).
ShatteringCertificate check_shattered(const ComplexMatrix& M, double eps,
                                      double zeta, double grid_step);

// Fraction of Ginibre trials with min_gap(gamma G_n) <= t.
double monte_carlo_gap_bound(int n, double gamma, double t, int trials,
                             RngStream& rng);

struct PseudospecSample {
  double re, im, sigma_min;
};

std::vector<PseudospecSample> pseudospectrum_grid(const ComplexMatrix& M,
                                                  double re_min, double re_max,
                                                  double im_min, double im_max,
                                                  double step);

}  // namespace smalleig::verify
