#include "smalleig/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "smalleig/errors.hpp"
#include "smalleig/opcount.hpp"

namespace smalleig {

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
  if (n < 1) throw ParameterOutOfRange("matrix dimension must be >= 1");
  a_.assign(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int n, std::vector<Complex> entries) : n_(n) {
  if (n < 1) throw ParameterOutOfRange("matrix dimension must be >= 1");
  if (entries.size() != static_cast<size_t>(n) * n) {
    throw ParameterOutOfRange("entry count does not match dimension");
  }
  a_ = std::move(entries);
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[i];
  return m;
}

bool ComplexMatrix::is_finite() const {
  for (const Complex& z : a_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  ComplexMatrix r(n_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  ComplexMatrix r(n_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      Complex aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::scaled(Complex c) const {
  ComplexMatrix r(n_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = c * a_[k];
  return r;
}

void ComplexMatrix::add_to_diagonal(Complex c) {
  for (int i = 0; i < n_; ++i) (*this)(i, i) += c;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs_entry() const {
  double s = 0.0;
  for (const Complex& z : a_) s = std::max(s, std::abs(z));
  return s;
}

double ComplexMatrix::one_norm() const {
  double best = 0.0;
  for (int j = 0; j < n_; ++j) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double ComplexMatrix::infinity_norm() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> x) const {
  std::vector<Complex> y(n_, Complex(0.0));
  for (int i = 0; i < n_; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<Complex> ComplexMatrix::apply_adjoint(
    std::span<const Complex> x) const {
  std::vector<Complex> y(n_, Complex(0.0));
  for (int j = 0; j < n_; ++j) {
    Complex s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::conj((*this)(i, j)) * x[i];
    y[j] = s;
  }
  return y;
}

bool is_hessenberg(const ComplexMatrix& m) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j + 1 < i; ++j)
      if (m(i, j) != 0.0) return false;
  return true;
}

HessenbergMatrix::HessenbergMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!is_hessenberg(m_)) {
    throw NotHessenberg("matrix has nonzero entries below the subdiagonal");
  }
}

HessenbergMatrix HessenbergMatrix::from_unchecked(ComplexMatrix m) {
  HessenbergMatrix h;
  h.m_ = std::move(m);
#ifndef NDEBUG
  if (!is_hessenberg(h.m_)) {
    throw NotHessenberg("structural invariant violated by a producer");
  }
#endif
  return h;
}

HouseholderReflector make_reflector(std::vector<Complex> v) {
  double nrm2 = 0.0;
  for (const Complex& z : v) nrm2 += std::norm(z);
  if (nrm2 == 0.0) throw ZeroReflectorVector("reflector vector is zero");
  return {std::move(v), 2.0 / nrm2};
}

std::vector<Complex> householder_apply(const HouseholderReflector& r,
                                       std::span<const Complex> x) {
  const size_t n = r.v.size();
  if (x.size() != n) throw ParameterOutOfRange("reflector/vector size mismatch");
  Complex t = 0.0;
  for (size_t i = 0; i < n; ++i) t += std::conj(r.v[i]) * x[i];
  t *= r.beta;
  std::vector<Complex> y(x.begin(), x.end());
  for (size_t i = 0; i < n; ++i) y[i] -= t * r.v[i];
  ops::add(4 * n + 2);
  return y;
}

std::vector<Complex> sample_unit_sphere(int n, RngStream& rng) {
  if (n < 1) throw ParameterOutOfRange("sphere dimension must be >= 1");
  std::vector<Complex> u(n);
  double nrm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    u[i] = rng.next_complex_gaussian();
    nrm2 += std::norm(u[i]);
  }
  double inv = 1.0 / std::sqrt(nrm2);
  for (Complex& z : u) z *= inv;
  return u;
}

Complex sample_disk(double radius, RngStream& rng) {
  if (radius < 0.0) throw ParameterOutOfRange("disk radius must be >= 0");
  double u1 = rng.next_uniform01();
  double u2 = rng.next_uniform01();
  double r = radius * std::sqrt(u1);
  double theta = 2.0 * M_PI * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

ComplexMatrix sample_ginibre(int n, RngStream& rng) {
  ComplexMatrix g(n);
  double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = inv * rng.next_complex_gaussian();
  return g;
}

namespace {

// Best lower bound on ||M|| from power iteration on M* M.
double power_iteration_lower_bound(const ComplexMatrix& m) {
  const int n = m.dim();
  double best = 0.0;
  for (int start = 0; start < 3; ++start) {
    std::vector<Complex> x(n);
    if (start == 0) {
      for (int i = 0; i < n; ++i) x[i] = Complex(1.0, 0.0);
    } else if (start == 1) {
      for (int i = 0; i < n; ++i) x[i] = Complex(1.0, (i % 3) - 1.0);
    } else {
      for (int i = 0; i < n; ++i)
        x[i] = Complex(std::cos(1.7 * (i + 1)), std::sin(0.9 * (i + 1)));
    }
    double prev = -1.0;
    for (int it = 0; it < 200; ++it) {
      double nx = 0.0;
      for (const Complex& z : x) nx += std::norm(z);
      nx = std::sqrt(nx);
      if (nx == 0.0) break;
      for (Complex& z : x) z /= nx;
      std::vector<Complex> y = m.apply(x);
      double sigma = 0.0;
      for (const Complex& z : y) sigma += std::norm(z);
      sigma = std::sqrt(sigma);
      best = std::max(best, sigma);
      if (prev >= 0.0 && sigma <= prev * (1.0 + 1e-13)) break;
      prev = sigma;
      x = m.apply_adjoint(y);
    }
  }
  return best;
}

}  // namespace

double operator_norm_estimate(const ComplexMatrix& m) {
  if (!m.is_finite()) throw ParameterOutOfRange("matrix has non-finite entries");
  double fro = m.frobenius_norm();
  if (fro == 0.0) return 0.0;
  double mixed = std::sqrt(m.one_norm() * m.infinity_norm());
  double upper = std::min(fro, mixed);
  double lower = std::max(power_iteration_lower_bound(m),
                          fro / std::sqrt(static_cast<double>(m.dim())));
  // 2*lower dominates ||M|| once the iteration reached half the true norm;
  // the certified upper bounds keep the estimate safe regardless.
  return std::min(upper, 2.0 * lower);
}

}  // namespace smalleig
