#pragma once

namespace smalleig {

// Data shared by every recursive call: the original dimension, a norm
// estimate with sigma/2 <= ||M|| <= sigma, and the pseudospectral and
// shattering parameters certified for the (preprocessed) input.
struct GlobalData {
  int dimension;
  double norm_bound;          // sigma
  double pseudospectral_eps;  // eps
  double shattering_radius;   // zeta

  void validate() const;
};

}  // namespace smalleig
