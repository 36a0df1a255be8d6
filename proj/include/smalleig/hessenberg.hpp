#pragma once

#include <vector>

#include "smalleig/matrix.hpp"

namespace smalleig {

struct HessReduction {
  HessenbergMatrix H;
  // Reflectors applied, bottom row upward, each padded to full length.
  // The accumulated unitary leaves e_n fixed.
  std::vector<HouseholderReflector> reflectors;
};

// Bottom-up Householder reduction: reflector i zeroes the row-i entries left
// of the subdiagonal, so e_n* is invariant throughout. Entries below the
// subdiagonal are set to literal zero. Already-zero segments (below the
// 2 n u ||M|| tolerance) are skipped, making Hessenberg inputs fixed points.
HessReduction hess_bu(const ComplexMatrix& M);

struct RhessDetail {
  HessenbergMatrix H;
  std::vector<Complex> u;  // sampled sphere vector (phase-normalized)
  bool initial_skipped;    // u was numerically e_n, so no initial reflector
  HouseholderReflector initial;
  std::vector<HouseholderReflector> reduction_reflectors;
};

// Randomized Hessenberg form: conjugate by the reflector of u - e_n for
// u ~ Unif(sphere), then hess_bu. The composite conjugation maps e_n* to u*.
RhessDetail rhess_detailed(const ComplexMatrix& M, RngStream& rng);
HessenbergMatrix rhess(const ComplexMatrix& M, RngStream& rng);

}  // namespace smalleig
