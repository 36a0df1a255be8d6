#include "smalleig/hessenberg.hpp"

#include <cmath>

#include "smalleig/errors.hpp"
#include "smalleig/opcount.hpp"
#include "smalleig/scalar.hpp"

namespace smalleig {

namespace {

// Left application of P = I - beta v v* (v supported on coordinates
// [0, len)) to every column of A.
void apply_left(ComplexMatrix& A, const std::vector<Complex>& v, double beta,
                int len) {
  const int n = A.dim();
  for (int c = 0; c < n; ++c) {
    Complex t = 0.0;
    for (int j = 0; j < len; ++j) t += std::conj(v[static_cast<size_t>(j)]) * A(j, c);
    t *= beta;
    for (int j = 0; j < len; ++j) A(j, c) -= t * v[static_cast<size_t>(j)];
    ops::add(4 * static_cast<std::uint64_t>(len) + 1);
  }
}

// Right application of P to rows [0, row_limit).
void apply_right(ComplexMatrix& A, const std::vector<Complex>& v, double beta,
                 int len, int row_limit) {
  for (int r = 0; r < row_limit; ++r) {
    Complex t = 0.0;
    for (int j = 0; j < len; ++j) t += A(r, j) * v[static_cast<size_t>(j)];
    t *= beta;
    for (int j = 0; j < len; ++j) A(r, j) -= t * std::conj(v[static_cast<size_t>(j)]);
    ops::add(4 * static_cast<std::uint64_t>(len) + 1);
  }
}

// Reflector over coordinates [0, len) sending the conjugate of row i's left
// segment to a multiple of e_{len-1}. Returns false when the segment left of
// the subdiagonal is already zero below tolerance (skip case).
bool row_reflector(const ComplexMatrix& A, int i, int len, double tol,
                   std::vector<Complex>& v, double& beta) {
  double head = 0.0;  // mass that needs to be zeroed
  for (int j = 0; j + 1 < len; ++j) head += std::norm(A(i, j));
  if (std::sqrt(head) <= tol) return false;

  v.assign(static_cast<size_t>(len), Complex(0.0));
  double nrm2 = head + std::norm(A(i, len - 1));
  double nrm = std::sqrt(nrm2);
  for (int j = 0; j < len; ++j) v[static_cast<size_t>(j)] = std::conj(A(i, j));
  Complex pivot = v[static_cast<size_t>(len - 1)];
  // Sign chosen to avoid cancellation: v = y + e^{i arg(y_last)} ||y|| e_last.
  Complex dir = (pivot == 0.0) ? Complex(1.0) : pivot / std::abs(pivot);
  v[static_cast<size_t>(len - 1)] += dir * nrm;
  double vnrm2 = head + std::norm(v[static_cast<size_t>(len - 1)]);
  if (vnrm2 == 0.0) return false;
  beta = 2.0 / vnrm2;
  ops::add(2 * static_cast<std::uint64_t>(len) + 6);
  return true;
}

HouseholderReflector pad_reflector(const std::vector<Complex>& v, double beta,
                                   int n) {
  std::vector<Complex> full(static_cast<size_t>(n), Complex(0.0));
  for (size_t j = 0; j < v.size(); ++j) full[j] = v[j];
  return {std::move(full), beta};
}

}  // namespace

HessReduction hess_bu(const ComplexMatrix& M) {
  if (!M.is_finite()) throw ParameterOutOfRange("input has non-finite entries");
  const int n = M.dim();
  ComplexMatrix A = M;
  std::vector<HouseholderReflector> reflectors;
  const double tol = 2.0 * n * unit_roundoff_hw() * M.frobenius_norm();

  // Bottom row upward: the reflector for row i acts on coordinates
  // [0, i), so rows below i and the e_n direction are never touched.
  std::vector<Complex> v;
  double beta = 0.0;
  for (int i = n - 1; i >= 2; --i) {
    const int len = i;
    if (row_reflector(A, i, len, tol, v, beta)) {
      // Right first: zeroes the row segment. Rows above i see both sides.
      apply_right(A, v, beta, len, i + 1);
      apply_left(A, v, beta, len);
      reflectors.push_back(pad_reflector(v, beta, n));
    }
    for (int j = 0; j + 1 < len; ++j) A(i, j) = 0.0;
  }
  return {HessenbergMatrix::from_unchecked(std::move(A)),
          std::move(reflectors)};
}

RhessDetail rhess_detailed(const ComplexMatrix& M, RngStream& rng) {
  const int n = M.dim();
  if (unit_roundoff_hw() > 1.0 / (20.0 * kHouseholderConstant * n * std::sqrt(n))) {
    throw PrecisionInsufficient(
        "dimension too large for the randomized Hessenberg error budget");
  }
  if (n == 1) {
    return {HessenbergMatrix::from_unchecked(M), {Complex(1.0)}, true, {}, {}};
  }

  std::vector<Complex> u = sample_unit_sphere(n, rng);
  // Unit phase so the last coordinate is real nonnegative; |u* x| is
  // phase-invariant, and the reflector of u - e_n then maps e_n to u exactly.
  Complex last = u[static_cast<size_t>(n - 1)];
  if (std::abs(last) > 0.0) {
    Complex dir = std::conj(last) / std::abs(last);
    for (Complex& z : u) z *= dir;
  }

  std::vector<Complex> v = u;
  v[static_cast<size_t>(n - 1)] -= 1.0;
  double vnrm2 = 0.0;
  for (const Complex& z : v) vnrm2 += std::norm(z);

  ComplexMatrix A = M;
  bool skipped = true;
  HouseholderReflector initial{};
  if (vnrm2 > 16.0 * n * unit_roundoff_hw() * unit_roundoff_hw()) {
    double beta = 2.0 / vnrm2;
    apply_left(A, v, beta, n);
    apply_right(A, v, beta, n, n);
    initial = {v, beta};
    skipped = false;
  }

  HessReduction red = hess_bu(A);
  return {std::move(red.H), std::move(u), skipped, std::move(initial),
          std::move(red.reflectors)};
}

HessenbergMatrix rhess(const ComplexMatrix& M, RngStream& rng) {
  return rhess_detailed(M, rng).H;
}

}  // namespace smalleig
