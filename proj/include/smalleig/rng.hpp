#pragma once

#include <complex>
#include <cstdint>

namespace smalleig {

// Deterministic counter-based stream. Identical (seed, path) pairs yield
// identical draws; distinct paths give statistically independent streams,
// so recursive solves and Monte Carlo trials are replayable.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed);

  // Derived stream for a recursion/call site. Chainable.
  RngStream child(std::uint64_t path_element) const;

  std::uint64_t next_u64();
  double next_uniform01();  // [0, 1)

  // Standard complex Gaussian, E|z|^2 = 1 (Re, Im independent N(0, 1/2)).
  std::complex<double> next_complex_gaussian();

 private:
  RngStream(std::uint64_t key, int /*tag*/) : state_(key) {}
  std::uint64_t state_;
};

}  // namespace smalleig
