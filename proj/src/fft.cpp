#include "arcwave/fft.hpp"

#include <cmath>
#include <numbers>

#include "arcwave/types.hpp"

namespace arcwave {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw InvalidInput("fft: length must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        cplx u = x[i + j];
        cplx v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<cplx> rfft(const std::vector<double>& x, std::size_t nfft) {
  if (nfft == 0 || (nfft & (nfft - 1)) != 0) throw InvalidInput("rfft: nfft must be a power of two");
  std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
  const std::size_t m = std::min(x.size(), nfft);
  for (std::size_t i = 0; i < m; ++i) buf[i] = cplx(x[i], 0.0);
  fft_pow2(buf, -1);
  buf.resize(nfft / 2 + 1);
  return buf;
}

std::vector<double> irfft(const std::vector<cplx>& spec, std::size_t nfft) {
  if (spec.size() != nfft / 2 + 1) throw InvalidInput("irfft: spectrum size must be nfft/2+1");
  std::vector<cplx> buf(nfft);
  buf[0] = spec[0];
  buf[nfft / 2] = spec[nfft / 2];
  for (std::size_t k = 1; k < nfft / 2; ++k) {
    buf[k] = spec[k];
    buf[nfft - k] = std::conj(spec[k]);
  }
  fft_pow2(buf, +1);
  std::vector<double> out(nfft);
  const double scale = 1.0 / static_cast<double>(nfft);
  for (std::size_t i = 0; i < nfft; ++i) out[i] = buf[i].real() * scale;
  return out;
}

double cubic_interp(const std::vector<double>& y, double u) {
  const auto n = static_cast<std::ptrdiff_t>(y.size());
  const double fl = std::floor(u);
  const auto i = static_cast<std::ptrdiff_t>(fl);
  const double t = u - fl;
  auto at = [&](std::ptrdiff_t j) -> double { return (j < 0 || j >= n) ? 0.0 : y[static_cast<std::size_t>(j)]; };
  const double ym1 = at(i - 1), y0 = at(i), y1 = at(i + 1), y2 = at(i + 2);
  // Keys (1981) cubic convolution, a = -1/2
  const double c0 = y0;
  const double c1 = 0.5 * (y1 - ym1);
  const double c2 = ym1 - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
  const double c3 = 0.5 * (y2 - ym1) + 1.5 * (y0 - y1);
  return ((c3 * t + c2) * t + c1) * t + c0;
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
  return w;
}

}  // namespace arcwave
