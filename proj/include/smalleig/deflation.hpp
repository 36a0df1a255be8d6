#pragma once

#include <vector>

#include "smalleig/matrix.hpp"

namespace smalleig {

struct DeflationSplit {
  std::vector<HessenbergMatrix> blocks;  // diagonal blocks in order
  std::vector<int> cut_positions;        // i with |H(i+1, i)| <= omega, 0-based
};

// Step cap of the decoupling loop: ceil(log(kappa^2 / p) / (2 log(3 omega /
// (4 dist)))), evaluated at certified surrogates. Increasing in dist, so the
// caller passes an upper bound on dist(lambda_hat, Spec H).
int decouple_step_cap(double kappa_upper, double p, double omega,
                      double dist_upper);

// Repeated degree-1 IQR at the fixed shift lambda_hat until
// |H(n, n-1)| <= omega; the exit test runs after every step since later
// iterates may regrow the subdiagonal. Throws DecoupleBudgetExceeded after
// step_cap steps (the caller's signal that the shift was bad).
HessenbergMatrix decouple(const HessenbergMatrix& H, Complex lambda_hat,
                          double omega, int step_cap);

// Zero every subdiagonal with magnitude <= omega (ties cut) and return the
// maximal irreducible diagonal blocks in order. Exact operation.
DeflationSplit deflate(const HessenbergMatrix& H, double omega);

}  // namespace smalleig
