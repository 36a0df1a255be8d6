#include "smalleig/rng.hpp"

#include <cmath>

namespace smalleig {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed)
    : state_(mix64(master_seed ^ 0xA0761D6478BD642FULL)) {}

RngStream RngStream::child(std::uint64_t path_element) const {
  // Keyed by the parent state so (seed, path sequence) addresses the stream.
  std::uint64_t key = mix64(state_ ^ mix64(path_element * kGolden + 1));
  return RngStream(key, 0);
}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::next_uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::complex<double> RngStream::next_complex_gaussian() {
  // |z|^2 ~ Exp(1), phase uniform.
  double u1 = next_uniform01();
  double u2 = next_uniform01();
  double r = std::sqrt(-std::log1p(-u1));
  double theta = 2.0 * M_PI * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace smalleig
