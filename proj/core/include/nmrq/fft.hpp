#pragma once

#include <complex>
#include <vector>

namespace nmrq {

// Unnormalized forward DFT, X_k = sum_n x_n exp(-2*pi*i*k*n/N).
// Radix-2 in-place for powers of two, direct evaluation otherwise.
void fft_inplace(std::vector<std::complex<double>>& x, bool inverse = false);

// Real-input transform: returns bins 0..floor(N/2) of the full DFT.
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

}  // namespace nmrq
