#pragma once

#include <complex>
#include <span>

namespace arrowm::fft {

// In-place unnormalized DFT, out_k = sum_j in_j exp(sign * 2 pi i j k / N).
// sign is +1 or -1. Thread-safe; plans are cached per (size, sign).
void transform(std::span<std::complex<double>> data, int sign);

}  // namespace arrowm::fft
