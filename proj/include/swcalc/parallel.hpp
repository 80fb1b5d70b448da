#pragma once

#include <cstddef>

namespace swcalc {

/// Worker threads used by the OpenMP kernels. 1 forces the serial paths.
void set_num_threads(int n);
int num_threads() noexcept;
bool openmp_enabled() noexcept;

/// Work below this many term products stays on the calling thread.
inline constexpr std::size_t kParallelMulThreshold = 4096;

}  // namespace swcalc
