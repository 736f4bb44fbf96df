#pragma once

#include <cstddef>
#include <vector>

#include "arcwave/types.hpp"

namespace arcwave {

/// Magnitude STFT on a Hann window. times are window centers on the
/// absolute axis; frequencies run 0..fs/2 on the zero-padded FFT grid.
struct Spectrogram {
  std::vector<double> times;
  std::vector<double> frequencies;
  std::vector<std::vector<double>> magnitudes;  // [frame][bin]
  std::size_t window_length = 0;
  std::size_t hop = 0;

  double max_magnitude() const;
};

/// Analytic-signal magnitude, same length and time axis as the source.
struct Envelope {
  double fs = 0.0;
  std::vector<double> times;
  std::vector<double> values;
};

struct Peak {
  double time = 0.0;
  double amplitude = 0.0;
  double prominence = 0.0;
};
using PeakList = std::vector<Peak>;

struct RidgePoint {
  double time = 0.0;
  double frequency = 0.0;
  double magnitude = 0.0;
};
using RidgeCurve = std::vector<RidgePoint>;

Spectrogram stft(const TimeSeries& ts, std::size_t window_length, std::size_t hop,
                 Exec exec = Exec::Parallel);

/// Envelope by the FFT analytic-signal method, optionally smoothed by a
/// centered moving average of smooth_width samples (0 = none).
Envelope envelope(const TimeSeries& ts, std::size_t smooth_width = 0);

/// Local maxima filtered by topographic prominence (as a fraction of the
/// envelope maximum) and minimum separation, sorted by time.
PeakList find_peaks(const Envelope& env, double min_prominence, double min_separation_s);

/// Per-frame argmax frequency within the band, quadratically interpolated
/// across three bins. Frames below 5% of the in-band maximum are omitted.
RidgeCurve extract_ridge(const Spectrogram& sp, double f_lo, double f_hi);

/// Zero-phase band-pass via an FFT mask with raised-cosine flanks of width
/// taper_hz outside [f_lo, f_hi].
TimeSeries bandpass_zero_phase(const TimeSeries& ts, double f_lo, double f_hi, double taper_hz);

/// Welch-averaged power spectrum (Hann, 50% overlap).
void welch_spectrum(const TimeSeries& ts, std::size_t segment_length,
                    std::vector<double>& freqs, std::vector<double>& psd);

}  // namespace arcwave
