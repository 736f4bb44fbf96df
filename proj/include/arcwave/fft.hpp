#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace arcwave {

using cplx = std::complex<double>;

std::size_t next_pow2(std::size_t n);

/// In-place iterative radix-2 FFT. x.size() must be a power of two.
/// sign = -1: forward (e^{-j2pi ik/n}), sign = +1: inverse kernel without
/// the 1/n scale.
void fft_pow2(std::vector<cplx>& x, int sign);

/// Forward DFT of a real signal zero-padded to nfft (power of two).
/// Returns bins 0..nfft/2 (inclusive).
std::vector<cplx> rfft(const std::vector<double>& x, std::size_t nfft);

/// Inverse of rfft: reconstructs nfft real samples from nfft/2+1 bins,
/// assuming Hermitian symmetry. Uses the e^{+j2pi ik/n} kernel and 1/n
/// scaling, matching rfft round trips.
std::vector<double> irfft(const std::vector<cplx>& spec, std::size_t nfft);

/// Keys cubic-convolution interpolation (a = -1/2) of uniformly sampled
/// data; u is a fractional sample index. Samples outside [0, n-1] read 0.
double cubic_interp(const std::vector<double>& y, double u);

/// Hann window of length n (periodic flavour, suited to 50% overlap STFT).
std::vector<double> hann_window(std::size_t n);

}  // namespace arcwave
