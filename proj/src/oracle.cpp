#include <algorithm>
#include <cmath>
#include <vector>

#include "smalleig/errors.hpp"
#include "smalleig/mp.hpp"
#include "smalleig/verify.hpp"
#include "verify_internal.hpp"

// Reference eigensolver, deliberately disjoint from the solver pipeline:
// a left-to-right Householder reduction at 240-bit precision, the Hessenberg
// characteristic-polynomial recurrence, and simultaneous Newton-corrected
// root iteration, with a double-precision sigma_min residual gate.

namespace smalleig::verify {

namespace {

using Poly = std::vector<MpComplex>;  // ascending coefficients

using MpMatrix = std::vector<MpComplex>;  // row-major n x n

MpComplex& at(MpMatrix& m, int n, int i, int j) {
  return m[static_cast<size_t>(i) * n + j];
}

// Left-to-right Householder reduction to Hessenberg form at MP precision.
void hessenberg_reduce_mp(MpMatrix& a, int n) {
  for (int col = 0; col + 2 < n; ++col) {
    const int len = n - col - 1;  // rows col+1 .. n-1
    MpReal below(0.0);
    for (int i = col + 2; i < n; ++i) below += abs2(at(a, n, i, col));
    if (below.is_zero()) continue;

    std::vector<MpComplex> v(static_cast<size_t>(len));
    MpReal nrm2 = below + abs2(at(a, n, col + 1, col));
    MpReal nrm = sqrt(nrm2);
    for (int i = 0; i < len; ++i) v[static_cast<size_t>(i)] = at(a, n, col + 1 + i, col);
    MpComplex pivot = v[0];
    MpReal pabs = abs(pivot);
    MpComplex dir = pabs.is_zero() ? MpComplex(1.0)
                                   : MpComplex(pivot.re / pabs, pivot.im / pabs);
    v[0] += MpComplex(dir.re * nrm, dir.im * nrm);
    MpReal vnrm2(0.0);
    for (const MpComplex& z : v) vnrm2 += abs2(z);
    if (vnrm2.is_zero()) continue;
    MpReal beta = MpReal(2.0) / vnrm2;

    // A <- P A on rows col+1..n-1.
    for (int c = 0; c < n; ++c) {
      MpComplex t(0.0);
      for (int i = 0; i < len; ++i)
        t += conj(v[static_cast<size_t>(i)]) * at(a, n, col + 1 + i, c);
      t = MpComplex(t.re * beta, t.im * beta);
      for (int i = 0; i < len; ++i)
        at(a, n, col + 1 + i, c) -= t * v[static_cast<size_t>(i)];
    }
    // A <- A P on columns col+1..n-1.
    for (int r = 0; r < n; ++r) {
      MpComplex t(0.0);
      for (int i = 0; i < len; ++i)
        t += at(a, n, r, col + 1 + i) * v[static_cast<size_t>(i)];
      t = MpComplex(t.re * beta, t.im * beta);
      for (int i = 0; i < len; ++i)
        at(a, n, r, col + 1 + i) -= t * conj(v[static_cast<size_t>(i)]);
    }
    for (int i = col + 2; i < n; ++i) at(a, n, i, col) = MpComplex(0.0);
  }
}

// det(lambda I_k - H_k) for the leading blocks of a Hessenberg matrix:
// chi_k = (lambda - H_kk) chi_{k-1}
//         - sum_i H_{i,k} (prod of subdiagonals between i and k) chi_{i-1}.
Poly char_poly_mp(const MpMatrix& h, int n) {
  std::vector<Poly> chi(static_cast<size_t>(n) + 1);
  chi[0] = {MpComplex(1.0)};
  MpMatrix hh = h;
  for (int k = 1; k <= n; ++k) {
    const int col = k - 1;
    const Poly& prev = chi[static_cast<size_t>(k - 1)];
    Poly cur(static_cast<size_t>(k) + 1, MpComplex(0.0));
    for (size_t d = 0; d < prev.size(); ++d) {
      cur[d + 1] += prev[d];
      cur[d] -= at(hh, n, col, col) * prev[d];
    }
    MpComplex prod(1.0);
    for (int i = k - 1; i >= 1; --i) {
      prod = prod * at(hh, n, i, i - 1);
      MpComplex coeff = at(hh, n, i - 1, col) * prod;
      const Poly& lower = chi[static_cast<size_t>(i - 1)];
      for (size_t d = 0; d < lower.size(); ++d) cur[d] -= coeff * lower[d];
    }
    chi[static_cast<size_t>(k)] = std::move(cur);
  }
  return chi[static_cast<size_t>(n)];
}

struct HornerEval {
  MpComplex p, dp;
};

HornerEval horner(const Poly& c, const MpComplex& z) {
  MpComplex p(0.0), dp(0.0);
  for (size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

std::vector<MpComplex> simultaneous_roots(const Poly& monic) {
  const int deg = static_cast<int>(monic.size()) - 1;
  std::vector<MpComplex> z(static_cast<size_t>(deg));
  if (deg == 0) return z;

  double bound = 0.0;
  for (int k = 0; k < deg; ++k) {
    bound = std::max(bound, std::abs(monic[static_cast<size_t>(k)].to_complex()));
  }
  double radius = 1.0 + bound;
  Complex center = -monic[static_cast<size_t>(deg - 1)].to_complex() /
                   static_cast<double>(deg);
  for (int j = 0; j < deg; ++j) {
    double angle = 2.0 * M_PI * j / deg + 0.35;
    z[static_cast<size_t>(j)] =
        MpComplex(center.real() + 0.7 * radius * std::cos(angle),
                  center.imag() + 0.7 * radius * std::sin(angle));
  }

  const MpReal tight(std::ldexp(1.0, -110));
  const MpReal loose(std::ldexp(1.0, -60));
  MpReal worst(1.0);
  for (int it = 0; it < 600; ++it) {
    worst = MpReal(0.0);
    for (int j = 0; j < deg; ++j) {
      HornerEval e = horner(monic, z[static_cast<size_t>(j)]);
      if (abs2(e.p).is_zero()) continue;
      if (abs2(e.dp).is_zero()) {
        z[static_cast<size_t>(j)] += MpComplex(1e-20, 1e-20);
        worst = MpReal(1.0);
        continue;
      }
      MpComplex w = e.p / e.dp;
      MpComplex acc(0.0);
      for (int l = 0; l < deg; ++l) {
        if (l == j) continue;
        MpComplex diff = z[static_cast<size_t>(j)] - z[static_cast<size_t>(l)];
        if (abs2(diff).is_zero()) {
          diff = MpComplex(1e-25, -1e-25);
        }
        acc += MpComplex(1.0) / diff;
      }
      MpComplex denom = MpComplex(1.0) - w * acc;
      MpComplex step = abs2(denom).is_zero() ? w : w / denom;
      z[static_cast<size_t>(j)] -= step;
      MpReal rel = abs(step) / (MpReal(1.0) + abs(z[static_cast<size_t>(j)]));
      worst = max(worst, rel);
    }
    if (worst <= tight) break;
  }
  if (worst > loose) {
    throw OracleNonConvergence("root iteration failed to settle");
  }
  return z;
}

}  // namespace

std::vector<Complex> oracle_eigenvalues(const ComplexMatrix& M) {
  const int n = M.dim();
  if (n > 64) throw ParameterOutOfRange("oracle limited to n <= 64");
  if (!M.is_finite()) throw ParameterOutOfRange("oracle input not finite");
  if (n == 1) return {M(0, 0)};

  MpMatrix a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i) * n + j] =
          MpComplex(M(i, j).real(), M(i, j).imag());
  hessenberg_reduce_mp(a, n);
  Poly chi = char_poly_mp(a, n);

  // Exact zero roots split off before iterating.
  size_t zeros = 0;
  while (zeros < chi.size() - 1 && abs2(chi[zeros]).is_zero()) ++zeros;
  Poly reduced(chi.begin() + static_cast<long>(zeros), chi.end());

  std::vector<MpComplex> roots = simultaneous_roots(reduced);
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(n));
  for (size_t k = 0; k < zeros; ++k) out.push_back(Complex(0.0, 0.0));
  for (const MpComplex& r : roots) out.push_back(r.to_complex());

  const double scale = std::max(M.frobenius_norm(), 1e-300);
  for (const Complex& lambda : out) {
    ComplexMatrix shifted = M.scaled(Complex(-1.0, 0.0));
    shifted.add_to_diagonal(lambda);
    if (smallest_singular_value(shifted).value > 1e-10 * scale) {
      throw OracleNonConvergence("root failed the residual gate");
    }
  }
  return out;
}

}  // namespace smalleig::verify
