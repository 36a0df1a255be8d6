#pragma once

#include <cstdint>

namespace smalleig::ops {

// Thread-local arithmetic-operation counter. One unit per complex
// add/sub/mul/div/sqrt performed by the counted kernels (iqr, hessenberg,
// householder application).
void reset() noexcept;
void add(std::uint64_t k) noexcept;
std::uint64_t count() noexcept;

}  // namespace smalleig::ops
