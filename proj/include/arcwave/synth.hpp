#pragma once

#include <complex>
#include <utility>

#include "arcwave/env.hpp"
#include "arcwave/modes.hpp"
#include "arcwave/types.hpp"

namespace arcwave {

enum class WaveletKind { Ricker, GaussianPulse };

/// Impulsive broadband source spectrum (zero-phase, real, non-negative).
/// Ricker peaks at center_frequency; GaussianPulse is a Gaussian bump of
/// the given bandwidth around center_frequency (wide bandwidth
/// approximates a flat unit spectrum).
struct SourceWavelet {
  WaveletKind kind = WaveletKind::Ricker;
  double center_frequency = 45.0;  // Hz
  double bandwidth = 40.0;         // Hz, GaussianPulse only
  double amplitude = 1.0;

  double spectrum(double f) const;
  double time_extent() const;  // effective wavelet duration, for window checks
};

/// Point source / point receiver geometry and the synthesis window.
struct Scenario {
  double source_depth = 10.0;     // m
  double receiver_depth = 52.0;   // m
  double range = 200e3;           // m
  double sample_rate = 256.0;     // Hz
  double duration = 16.0;         // s

  void validate(const Waveguide& wg, double f_max) const;
};

struct SynthOptions {
  int max_modes = 20;
  double mode_dz = 0.0;             // 0: automatic per solve_modes
  double min_depth_on_path = 0.0;   // > 0: apply the seamount cutoff filter
  double guard_table_df = 5.0;      // Hz, coarse table for the wraparound guard
  Exec exec = Exec::Parallel;
};

/// Single-frequency pressure transfer function: the modal sum
///   sum_m psi_m(z_s) psi_m(z_r) e^{-alpha_m r} e^{j k_m r} e^{j pi/4}
///         / (rho(z_s) sqrt(8 pi r k_m))
/// with eigenfunctions interpolated linearly on the mode grid.
std::complex<double> transfer_function(const Waveguide& wg, const Scenario& sc, double frequency,
                                       const ModeSet& ms);

/// Broadband received waveform: source spectrum times transfer function on
/// the FFT grid of (fs, T), zero outside [f_band.first, f_band.second],
/// inverse real FFT. The window starts at t0 = 0.95 r / max water speed.
/// Errors if the predicted group-delay spread exceeds 0.9 T or the window
/// cannot contain the last predicted arrival.
TimeSeries synthesize(const Waveguide& wg, const Scenario& sc, const SourceWavelet& src,
                      std::pair<double, double> f_band, const SynthOptions& opt = {});

}  // namespace arcwave
