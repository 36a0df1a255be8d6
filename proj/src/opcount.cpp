#include "smalleig/opcount.hpp"

namespace smalleig::ops {

namespace {
thread_local std::uint64_t counter = 0;
}

void reset() noexcept { counter = 0; }
void add(std::uint64_t k) noexcept { counter += k; }
std::uint64_t count() noexcept { return counter; }

}  // namespace smalleig::ops
