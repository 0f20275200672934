#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace decompound {

bool is_pow2(std::int64_t n);

// In-place forward DFT: a_k <- sum_j a_j e^{-2 pi i jk/N}. Iterative radix-2
// Cooley-Tukey; N must be a power of 2 (throws std::invalid_argument).
void fft_pow2(std::vector<std::complex<double>>& a);

}  // namespace decompound
