#pragma once

#include <vector>

#include "smalleig/matrix.hpp"

namespace smalleig::verify::detail {

// Partial-pivoting LU over doubles, local to the verification tools.
struct LuFactors {
  ComplexMatrix lu;
  std::vector<int> perm;
  bool exactly_singular;

  explicit LuFactors(const ComplexMatrix& a);
  std::vector<Complex> solve(std::span<const Complex> b) const;
};

// Unit right eigenvector at an oracle eigenvalue, by inverse iteration.
std::vector<Complex> unit_eigenvector(const ComplexMatrix& m, Complex lambda);

}  // namespace smalleig::verify::detail
