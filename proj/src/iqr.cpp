#include "smalleig/iqr.hpp"

#include <cmath>
#include <utility>

#include "smalleig/errors.hpp"
#include "smalleig/opcount.hpp"
#include "smalleig/scalar.hpp"

namespace smalleig {

namespace {

struct Givens {
  Complex c, s;  // G = [[c, s], [-conj(s), conj(c)]], G (a, b)^T = (rho, 0)
};

Givens make_givens(Complex a, Complex b) {
  if (b == 0.0) return {Complex(1.0), Complex(0.0)};
  double rho = std::hypot(std::abs(a), std::abs(b));
  ops::add(8);
  return {std::conj(a) / rho, std::conj(b) / rho};
}

// One shifted QR step in place. A is Hessenberg on entry and exit; returns
// |R_nn| of the factorization qr(A - s) under the positive-diagonal-R
// convention, which makes the step's output unique.
double iqr_step_inplace(ComplexMatrix& A, Complex shift) {
  const int n = A.dim();
  for (int i = 0; i < n; ++i) A(i, i) -= shift;
  ops::add(static_cast<std::uint64_t>(n));

  std::vector<Givens> rots;
  rots.reserve(n > 1 ? n - 1 : 0);

  // Forward sweep: R = G_{n-2} ... G_0 (A - s), eliminating each subdiagonal.
  // Each rotation leaves a real nonnegative entry at (k, k).
  for (int k = 0; k + 1 < n; ++k) {
    Givens g = make_givens(A(k, k), A(k + 1, k));
    for (int j = k; j < n; ++j) {
      Complex x = A(k, j);
      Complex y = A(k + 1, j);
      A(k, j) = g.c * x + g.s * y;
      A(k + 1, j) = -std::conj(g.s) * x + std::conj(g.c) * y;
    }
    ops::add(6 * static_cast<std::uint64_t>(n - k));
    A(k + 1, k) = 0.0;
    rots.push_back(g);
  }

  // Residual diagonal phases of R (the (n, n) entry always, the others only
  // when an identity rotation was used). Folding them into Q afterwards
  // yields the canonical factor with real nonnegative diagonal.
  std::vector<Complex> phase(n, Complex(1.0));
  bool any_phase = false;
  for (int k = 0; k < n; ++k) {
    Complex d = A(k, k);
    if (d != 0.0 && (d.imag() != 0.0 || d.real() < 0.0)) {
      phase[static_cast<size_t>(k)] = d / std::abs(d);
      any_phase = true;
    }
  }
  double r_nn = std::abs(A(n - 1, n - 1));

  // Backward sweep: A <- R G_0* G_1* ... G_{n-2}*; only rows up to k+1 carry
  // nonzeros in columns k, k+1, which keeps the result Hessenberg.
  for (int k = 0; k + 1 < n; ++k) {
    const Givens& g = rots[static_cast<size_t>(k)];
    for (int i = 0; i <= k + 1; ++i) {
      Complex x = A(i, k);
      Complex y = A(i, k + 1);
      A(i, k) = x * std::conj(g.c) + y * std::conj(g.s);
      A(i, k + 1) = -x * g.s + y * g.c;
    }
    ops::add(6 * static_cast<std::uint64_t>(k + 2));
  }

  if (any_phase) {
    for (int k = 0; k < n; ++k) {
      Complex d = phase[static_cast<size_t>(k)];
      if (d == Complex(1.0)) continue;
      Complex dc = std::conj(d);
      for (int j = 0; j < n; ++j) A(k, j) *= dc;
      for (int i = 0; i < n; ++i) A(i, k) *= d;
      ops::add(2 * static_cast<std::uint64_t>(n));
    }
  }

  for (int i = 0; i < n; ++i) A(i, i) += shift;
  ops::add(static_cast<std::uint64_t>(n));
  return r_nn;
}

// Practical surrogate evaluation of the precision precondition for the tau
// product, in log2 space: u <= (eps-side constant) * (dist / ((2+2C)||H||))^{2m}.
bool tau_precondition_holds(const TauPolicy& p, int n, int degree) {
  double u = std::ldexp(1.0, 1 - p.bits);
  double lhs = std::log2(u);
  double ratio = p.dist_lower / ((2.0 + 2.0 * p.radius_factor) * p.norm_upper);
  double rhs = -std::log2(6.0e3 * p.kappa_upper * iqr_stability(n)) +
               2.0 * degree * std::log2(ratio);
  return lhs <= rhs;
}

}  // namespace

IqrResult iqr_step(const HessenbergMatrix& H, Complex shift) {
  ComplexMatrix A = H.matrix();
  double r = iqr_step_inplace(A, shift);
  return {HessenbergMatrix::from_unchecked(std::move(A)), {r}};
}

IqrResult iqr_poly(const HessenbergMatrix& H,
                   std::span<const Complex> shifts) {
  ComplexMatrix A = H.matrix();
  std::vector<double> rs;
  rs.reserve(shifts.size());
  for (Complex s : shifts) rs.push_back(iqr_step_inplace(A, s));
  return {HessenbergMatrix::from_unchecked(std::move(A)), std::move(rs)};
}

TauResult compute_tau_pow(const HessenbergMatrix& H, Complex shift, int degree,
                          const TauPolicy& policy) {
  if (degree < 1) throw NonPositiveParameter("tau product requires degree >= 1");

  TauResult out{1.0, 0.0, false, false, true};
  if (policy.mode == TauPolicy::Mode::theory || policy.has_surrogates()) {
    if (!policy.has_surrogates()) {
      throw ParameterOutOfRange(
          "theory-mode tau product needs kappa/dist/norm surrogates");
    }
    out.precond_checked = true;
    out.precond_ok = tau_precondition_holds(policy, H.dim(), degree);
    if (policy.mode == TauPolicy::Mode::theory && !out.precond_ok) {
      throw PrecisionInsufficient(
          "tau-product precision precondition fails at the configured width");
    }
  }

  ComplexMatrix A = H.matrix();
  double value = 1.0;
  double log_sum = 0.0;
  for (int k = 0; k < degree; ++k) {
    double r = iqr_step_inplace(A, shift);
    if (r == 0.0) {
      throw SingularEncounter(
          "R_nn vanished: shift is numerically on the spectrum");
    }
    value *= r;
    log_sum += std::log(r);
    ops::add(1);
  }
  out.value = value;
  out.log_value = log_sum;
  out.out_of_range = !std::isnormal(value);
  return out;
}

}  // namespace smalleig
