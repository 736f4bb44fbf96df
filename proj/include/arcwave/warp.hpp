#pragma once

#include <vector>

#include "arcwave/tfr.hpp"
#include "arcwave/types.hpp"

namespace arcwave {

/// Configuration of the refractive warping operator h(t) = t_r - t^{-2}.
/// t_r is on the signal's absolute time axis and must lie at least `guard`
/// seconds after the signal's support.
struct WarpConfig {
  double t_r = 0.0;        // s
  double output_fs = 0.0;  // warped-domain rate; <= 0 selects 4x the max warped frequency
  double guard = 0.05;     // s
};

/// Pass band in the warped domain assigned to one separated mode.
struct ModeBand {
  int mode_hint = 0;      // 0 = unlabeled
  double center = 0.0;    // Hz, warped domain
  double halfwidth = 0.0; // Hz
};

struct SeparatedMode {
  TimeSeries series;  // unwarped single-mode waveform
  RidgeCurve ridge;   // spectrogram ridge of the separated mode
  ModeBand band;
};

/// Warped signal y(u) = sqrt(|h'(u)|) s(h(u)) with h(u) = t_r - u^{-2},
/// resampled by cubic interpolation on a uniform u grid spanning the image
/// of the signal's support under h^{-1}(t) = (t_r - t)^{-1/2}. The output
/// TimeSeries carries the u axis in its fs/t0 fields.
TimeSeries warp(const TimeSeries& ts, const WarpConfig& cfg);

/// Inverse transform y(t) = sqrt(|g'(t)|) w(g(t)), g = h^{-1}, resampled
/// at output_fs over the time span the warped signal maps back onto.
TimeSeries unwarp(const TimeSeries& warped, const WarpConfig& cfg, double output_fs);

struct SeparationOptions {
  double peak_prominence = 0.1;    // of the warped spectrum maximum
  double ridge_window_s = 0.25;    // STFT window for per-mode ridges
  double ridge_band_lo = 0.0;      // 0: full band
  double ridge_band_hi = 0.0;
  bool allow_overlap = false;
};

/// The warp -> band-pass -> unwarp separation pipeline. With an empty
/// `bands` list, bands are detected from peaks of the Welch spectrum of
/// the warped signal (halfwidth = half the gap to the nearest neighbour).
/// Results are ordered by ascending warped-domain center frequency.
std::vector<SeparatedMode> separate_modes(const TimeSeries& ts, const WarpConfig& cfg,
                                          std::vector<ModeBand> bands = {},
                                          const SeparationOptions& opt = {});

}  // namespace arcwave
