#include "smalleig/deflation.hpp"

#include <cmath>

#include "smalleig/errors.hpp"
#include "smalleig/iqr.hpp"

namespace smalleig {

int decouple_step_cap(double kappa_upper, double p, double omega,
                      double dist_upper) {
  if (!(kappa_upper >= 1.0) || !(p > 0.0) || !(omega > 0.0) ||
      !(dist_upper > 0.0)) {
    throw NonPositiveParameter("decouple step cap needs positive inputs");
  }
  double ratio = 3.0 * omega / (4.0 * dist_upper);
  if (!(ratio > 1.0)) {
    throw ParameterOutOfRange("step cap formula needs dist < 3 omega / 4");
  }
  double raw = std::log(kappa_upper * kappa_upper / p) / (2.0 * std::log(ratio));
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

HessenbergMatrix decouple(const HessenbergMatrix& H, Complex lambda_hat,
                          double omega, int step_cap) {
  if (!(omega > 0.0)) throw NonPositiveParameter("omega must be positive");
  if (step_cap < 1) throw NonPositiveParameter("step cap must be >= 1");
  const int n = H.dim();
  if (n < 2) return H;

  HessenbergMatrix cur = H;
  int steps = 0;
  // Exit is tested after every step: later iterates may regrow the entry.
  while (cur.subdiagonal_abs(n - 2) > omega) {
    if (steps >= step_cap) {
      throw DecoupleBudgetExceeded(
          "subdiagonal did not fall below omega within the step cap");
    }
    cur = iqr_step(cur, lambda_hat).H_next;
    ++steps;
  }
  return cur;
}

DeflationSplit deflate(const HessenbergMatrix& H, double omega) {
  if (omega < 0.0) throw ParameterOutOfRange("omega must be >= 0");
  const int n = H.dim();
  DeflationSplit out;
  for (int i = 0; i + 1 < n; ++i) {
    if (H.subdiagonal_abs(i) <= omega) out.cut_positions.push_back(i);
  }
  int start = 0;
  for (size_t c = 0; c <= out.cut_positions.size(); ++c) {
    int end = (c < out.cut_positions.size()) ? out.cut_positions[c] + 1 : n;
    int dim = end - start;
    ComplexMatrix block(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) block(i, j) = H(start + i, start + j);
    out.blocks.push_back(HessenbergMatrix::from_unchecked(std::move(block)));
    start = end;
  }
  return out;
}

}  // namespace smalleig
