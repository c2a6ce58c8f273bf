#include "nmrq/fft.hpp"

#include <cmath>

namespace nmrq {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 6.28318530717958647692;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cd>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const cd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cd u = a[i + j];
        const cd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_direct(std::vector<cd>& a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<cd> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    cd acc(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double ang =
          sign * kTwoPi * static_cast<double>(k) * static_cast<double>(m) /
          static_cast<double>(n);
      acc += a[m] * cd(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  a = std::move(out);
}

}  // namespace

void fft_inplace(std::vector<cd>& x, bool inverse) {
  if (x.size() < 2) return;
  if (is_pow2(x.size()))
    fft_radix2(x, inverse);
  else
    dft_direct(x, inverse);
}

std::vector<cd> rfft(const std::vector<double>& x) {
  std::vector<cd> full(x.begin(), x.end());
  fft_inplace(full);
  full.resize(x.size() / 2 + 1);
  return full;
}

}  // namespace nmrq
