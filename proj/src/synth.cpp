#include "arcwave/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arcwave/fft.hpp"

namespace arcwave {

double SourceWavelet::spectrum(double f) const {
  switch (kind) {
    case WaveletKind::Ricker: {
      const double x = f / center_frequency;
      return amplitude * x * x * std::exp(1.0 - x * x);  // unit peak at center_frequency
    }
    case WaveletKind::GaussianPulse: {
      const double x = (f - center_frequency) / bandwidth;
      return amplitude * std::exp(-x * x);
    }
  }
  return 0.0;
}

double SourceWavelet::time_extent() const {
  return kind == WaveletKind::Ricker ? 3.0 / center_frequency : 3.0 / bandwidth;
}

void Scenario::validate(const Waveguide& wg, double f_max) const {
  if (!(source_depth > 0.0 && source_depth < wg.water_depth))
    throw InvalidInput("scenario: source depth must lie inside the water column");
  if (!(receiver_depth > 0.0 && receiver_depth < wg.water_depth))
    throw InvalidInput("scenario: receiver depth must lie inside the water column");
  if (range <= 0.0) throw InvalidInput("scenario: range must be > 0");
  if (sample_rate <= 2.0 * f_max)
    throw InvalidInput("scenario: sample rate must exceed twice the band maximum");
  if (duration <= 0.0) throw InvalidInput("scenario: duration must be > 0");
}

std::complex<double> transfer_function(const Waveguide& wg, const Scenario& sc, double frequency,
                                       const ModeSet& ms) {
  if (sc.range <= 0.0) throw InvalidInput("transfer_function: range must be > 0");
  if (ms.modes.empty()) return {0.0, 0.0};
  const double r = sc.range;
  const double rho_s = wg.density_at(sc.source_depth);
  const std::complex<double> phase45(std::cos(std::numbers::pi / 4.0), std::sin(std::numbers::pi / 4.0));
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t m = 0; m < ms.size(); ++m) {
    const Mode& mode = ms.modes[m];
    const double amp = ms.psi_at(m, sc.source_depth) * ms.psi_at(m, sc.receiver_depth) *
                       std::exp(-mode.attenuation * r) /
                       (rho_s * std::sqrt(8.0 * std::numbers::pi * r * mode.wavenumber));
    const double ph = mode.wavenumber * r;
    sum += amp * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  (void)frequency;
  return sum * phase45;
}

TimeSeries synthesize(const Waveguide& wg, const Scenario& sc, const SourceWavelet& src,
                      std::pair<double, double> f_band, const SynthOptions& opt) {
  const auto [f_lo, f_hi] = f_band;
  if (!(f_lo > 0.0 && f_lo < f_hi)) throw InvalidInput("synthesize: empty or inverted band");
  sc.validate(wg, f_hi);
  if (f_hi >= sc.sample_rate / 2.0) throw InvalidInput("synthesize: band violates Nyquist");

  const double r = sc.range;
  double cmax = 0.0, cmin = 1e9;
  for (double z = 0.0; z <= wg.water_depth; z += wg.water_depth / 2000.0) {
    cmax = std::max(cmax, wg.speed_at(z));
    cmin = std::min(cmin, wg.speed_at(z));
  }
  const double t0 = 0.95 * r / cmax;

  // wraparound guard from coarse dispersion extremes
  {
    const double df = std::min(opt.guard_table_df, (f_hi - f_lo) / 4.0);
    DispersionTable guard = dispersion_table(wg, f_lo, f_hi, df, opt.max_modes, opt.exec);
    double vg_lo = 1e12, vg_hi = 0.0;
    for (const auto& c : guard.curves) {
      for (double v : c.vg) {
        if (std::isnan(v)) continue;
        vg_lo = std::min(vg_lo, v);
        vg_hi = std::max(vg_hi, v);
      }
    }
    if (vg_hi > 0.0) {
      const double spread = r / vg_lo - r / vg_hi;
      if (spread > 0.9 * sc.duration)
        throw ComputeError("synthesize: predicted dispersion spread " + std::to_string(spread) +
                           " s exceeds 0.9 x window of " + std::to_string(sc.duration) + " s");
      const double t_last = r / vg_lo + src.time_extent();
      if (t_last - t0 > sc.duration)
        throw ComputeError("synthesize: window of " + std::to_string(sc.duration) +
                           " s cannot contain the last predicted arrival (need " +
                           std::to_string(t_last - t0) + " s)");
    }
  }

  const auto n_out = static_cast<std::size_t>(std::ceil(sc.sample_rate * sc.duration));
  const std::size_t nfft = next_pow2(n_out);
  const double df_bin = sc.sample_rate / static_cast<double>(nfft);
  const double dz_shared = std::min(1.0, wg.ssp.min_speed() / f_hi / 20.0);

  const auto l_lo = static_cast<std::ptrdiff_t>(std::ceil(f_lo / df_bin));
  const auto l_hi = static_cast<std::ptrdiff_t>(std::floor(f_hi / df_bin));
  std::vector<cplx> spec(nfft / 2 + 1, cplx(0.0, 0.0));

  auto fill_bin = [&](std::ptrdiff_t l) {
    const double f = static_cast<double>(l) * df_bin;
    ModeSet ms = solve_modes(wg, f, opt.max_modes, dz_shared);
    if (opt.min_depth_on_path > 0.0) ms = cutoff_filter(ms, opt.min_depth_on_path, wg);
    const cplx h = transfer_function(wg, sc, f, ms);
    const double omega = 2.0 * std::numbers::pi * f;
    const cplx shift(std::cos(omega * t0), -std::sin(omega * t0));
    // conjugate so that irfft's e^{+j} kernel realizes the e^{-j omega t} convention
    spec[static_cast<std::size_t>(l)] = std::conj(src.spectrum(f) * h * shift);
  };

  if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t l = l_lo; l <= l_hi; ++l) fill_bin(l);
  } else {
    for (std::ptrdiff_t l = l_lo; l <= l_hi; ++l) fill_bin(l);
  }

  std::vector<double> x = irfft(spec, nfft);
  x.resize(n_out);
  TimeSeries ts;
  ts.fs = sc.sample_rate;
  ts.t0 = t0;
  ts.samples = std::move(x);
  return ts;
}

}  // namespace arcwave
