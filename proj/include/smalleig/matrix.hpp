#pragma once

#include <complex>
#include <span>
#include <vector>

#include "smalleig/rng.hpp"

namespace smalleig {

using Complex = std::complex<double>;

// Dense complex square matrix, row-major, value semantics.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int n);
  ComplexMatrix(int n, std::vector<Complex> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix diagonal(std::span<const Complex> d);

  int dim() const { return n_; }
  Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Complex& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }
  std::span<const Complex> entries() const { return a_; }

  bool is_finite() const;

  ComplexMatrix adjoint() const;
  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix scaled(Complex c) const;
  void add_to_diagonal(Complex c);

  double frobenius_norm() const;
  double max_abs_entry() const;
  double one_norm() const;       // max column abs sum
  double infinity_norm() const;  // max row abs sum

  std::vector<Complex> apply(std::span<const Complex> x) const;          // M x
  std::vector<Complex> apply_adjoint(std::span<const Complex> x) const;  // M* x

 private:
  int n_;
  std::vector<Complex> a_;
};

bool is_hessenberg(const ComplexMatrix& m);

// Hessenberg structure: entries (i, j) with i > j+1 are exactly zero.
class HessenbergMatrix {
 public:
  // Validates the structural invariant; throws NotHessenberg.
  explicit HessenbergMatrix(ComplexMatrix m);
  // Trusted path for producers that zero the lower triangle themselves.
  static HessenbergMatrix from_unchecked(ComplexMatrix m);

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(int i, int j) const { return m_(i, j); }
  // |H(i+1, i)| for i in [0, n-1).
  double subdiagonal_abs(int i) const { return std::abs(m_(i + 1, i)); }

 private:
  HessenbergMatrix() : m_(1) {}
  ComplexMatrix m_;
};

struct HouseholderReflector {
  std::vector<Complex> v;  // nonzero; reflector is I - beta v v*
  double beta;             // 2 / (v* v)
};

HouseholderReflector make_reflector(std::vector<Complex> v);

// (I - beta v v*) x, computed as x - beta (v* x) v.
std::vector<Complex> householder_apply(const HouseholderReflector& r,
                                       std::span<const Complex> x);

// Uniform on the complex unit sphere (normalized complex Gaussian vector).
std::vector<Complex> sample_unit_sphere(int n, RngStream& rng);

// Uniform on the closed disk of the given radius about 0; radius 0 is the
// degenerate point mass at 0.
Complex sample_disk(double radius, RngStream& rng);

// i.i.d. centered complex Gaussian entries of variance 1/n.
ComplexMatrix sample_ginibre(int n, RngStream& rng);

// Certified two-sided operator norm estimate: ||M|| <= result <= 2 ||M||.
// Minimum of certified upper bounds (Frobenius, sqrt(one*infinity), twice the
// best power-iteration lower bound on M* M).
double operator_norm_estimate(const ComplexMatrix& m);

}  // namespace smalleig
