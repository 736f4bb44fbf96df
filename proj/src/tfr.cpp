#include "arcwave/tfr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcwave/fft.hpp"

namespace arcwave {

double Spectrogram::max_magnitude() const {
  double m = 0.0;
  for (const auto& row : magnitudes)
    for (double v : row) m = std::max(m, v);
  return m;
}

Spectrogram stft(const TimeSeries& ts, std::size_t window_length, std::size_t hop, Exec exec) {
  if (window_length == 0 || window_length > ts.size())
    throw InvalidInput("stft: window longer than signal");
  if (hop == 0) throw InvalidInput("stft: hop must be >= 1");

  const std::size_t nfft = next_pow2(window_length);
  const std::vector<double> win = hann_window(window_length);
  const std::size_t n_frames = (ts.size() - window_length) / hop + 1;

  Spectrogram sp;
  sp.window_length = window_length;
  sp.hop = hop;
  sp.times.resize(n_frames);
  sp.frequencies.resize(nfft / 2 + 1);
  for (std::size_t l = 0; l < sp.frequencies.size(); ++l)
    sp.frequencies[l] = static_cast<double>(l) * ts.fs / static_cast<double>(nfft);
  sp.magnitudes.assign(n_frames, std::vector<double>(nfft / 2 + 1, 0.0));

  auto do_frame = [&](std::ptrdiff_t fi) {
    const std::size_t start = static_cast<std::size_t>(fi) * hop;
    std::vector<double> seg(window_length);
    for (std::size_t i = 0; i < window_length; ++i) seg[i] = ts.samples[start + i] * win[i];
    const std::vector<cplx> bins = rfft(seg, nfft);
    for (std::size_t l = 0; l < bins.size(); ++l)
      sp.magnitudes[static_cast<std::size_t>(fi)][l] = std::abs(bins[l]);
    sp.times[static_cast<std::size_t>(fi)] =
        ts.t0 + (static_cast<double>(start) + static_cast<double>(window_length) / 2.0) / ts.fs;
  };

  const auto nf = static_cast<std::ptrdiff_t>(n_frames);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t fi = 0; fi < nf; ++fi) do_frame(fi);
  } else {
    for (std::ptrdiff_t fi = 0; fi < nf; ++fi) do_frame(fi);
  }
  return sp;
}

Envelope envelope(const TimeSeries& ts, std::size_t smooth_width) {
  const std::size_t n = ts.size();
  if (n < 4) throw InvalidInput("envelope: signal too short");
  const std::size_t nfft = next_pow2(n);
  std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) buf[i] = cplx(ts.samples[i], 0.0);
  fft_pow2(buf, -1);
  // analytic signal: zero negative frequencies, double positive ones
  for (std::size_t l = 1; l < nfft / 2; ++l) buf[l] *= 2.0;
  for (std::size_t l = nfft / 2 + 1; l < nfft; ++l) buf[l] = cplx(0.0, 0.0);
  fft_pow2(buf, +1);

  Envelope env;
  env.fs = ts.fs;
  env.times.resize(n);
  env.values.resize(n);
  const double scale = 1.0 / static_cast<double>(nfft);
  for (std::size_t i = 0; i < n; ++i) {
    env.times[i] = ts.time_at(i);
    env.values[i] = std::abs(buf[i]) * scale;
  }
  if (smooth_width > 1) {
    std::vector<double> sm(n);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(smooth_width) / 2;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      double acc = 0.0;
      int cnt = 0;
      for (std::ptrdiff_t j = i - half; j <= i + half; ++j) {
        if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
        acc += env.values[static_cast<std::size_t>(j)];
        ++cnt;
      }
      sm[static_cast<std::size_t>(i)] = acc / cnt;
    }
    env.values = std::move(sm);
  }
  return env;
}

PeakList find_peaks(const Envelope& env, double min_prominence, double min_separation_s) {
  if (!(min_prominence > 0.0 && min_prominence <= 1.0))
    throw InvalidInput("find_peaks: min_prominence must be in (0, 1]");
  const auto& v = env.values;
  const std::size_t n = v.size();
  if (n < 3) return {};
  const double vmax = *std::max_element(v.begin(), v.end());
  if (vmax <= 0.0) return {};

  struct Cand {
    std::size_t idx;
    double prom;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
    const double h = v[i];
    double left_min = h, right_min = h;
    for (std::size_t j = i; j-- > 0;) {
      if (v[j] > h) break;
      left_min = std::min(left_min, v[j]);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[j] > h) break;
      right_min = std::min(right_min, v[j]);
    }
    const double prom = h - std::max(left_min, right_min);
    if (prom >= min_prominence * vmax) cands.push_back({i, prom});
  }
  // greedy separation filter, strongest first
  std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
    if (v[a.idx] != v[b.idx]) return v[a.idx] > v[b.idx];
    return a.idx < b.idx;
  });
  std::vector<Cand> kept;
  for (const auto& c : cands) {
    bool ok = true;
    for (const auto& k : kept) {
      const double dt = std::abs(env.times[c.idx] - env.times[k.idx]);
      if (dt < min_separation_s) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [](const Cand& a, const Cand& b) { return a.idx < b.idx; });
  PeakList peaks;
  for (const auto& c : kept) peaks.push_back({env.times[c.idx], v[c.idx], c.prom});
  return peaks;
}

RidgeCurve extract_ridge(const Spectrogram& sp, double f_lo, double f_hi) {
  if (!(f_lo < f_hi) || f_hi < sp.frequencies.front() || f_lo > sp.frequencies.back())
    throw InvalidInput("extract_ridge: empty band");
  std::size_t l_lo = 0, l_hi = sp.frequencies.size() - 1;
  while (l_lo < sp.frequencies.size() && sp.frequencies[l_lo] < f_lo) ++l_lo;
  while (l_hi > 0 && sp.frequencies[l_hi] > f_hi) --l_hi;
  if (l_lo > l_hi) throw InvalidInput("extract_ridge: band contains no bin");

  double gmax = 0.0;
  for (const auto& row : sp.magnitudes)
    for (std::size_t l = l_lo; l <= l_hi; ++l) gmax = std::max(gmax, row[l]);

  RidgeCurve ridge;
  if (gmax <= 0.0) return ridge;
  const double df = sp.frequencies.size() > 1 ? sp.frequencies[1] - sp.frequencies[0] : 0.0;
  for (std::size_t fi = 0; fi < sp.magnitudes.size(); ++fi) {
    const auto& row = sp.magnitudes[fi];
    std::size_t best = l_lo;
    for (std::size_t l = l_lo + 1; l <= l_hi; ++l)
      if (row[l] > row[best]) best = l;
    if (row[best] < 0.05 * gmax) continue;
    double f = sp.frequencies[best];
    if (best > l_lo && best < l_hi) {
      const double ym1 = row[best - 1], y0 = row[best], y1 = row[best + 1];
      const double denom = ym1 - 2.0 * y0 + y1;
      if (denom < 0.0) {
        const double delta = 0.5 * (ym1 - y1) / denom;
        if (std::abs(delta) <= 0.5) f += delta * df;
      }
    }
    ridge.push_back({sp.times[fi], f, row[best]});
  }
  return ridge;
}

TimeSeries bandpass_zero_phase(const TimeSeries& ts, double f_lo, double f_hi, double taper_hz) {
  if (!(f_lo >= 0.0 && f_lo < f_hi)) throw InvalidInput("bandpass: bad band");
  const std::size_t n = ts.size();
  const std::size_t nfft = next_pow2(2 * n);
  std::vector<cplx> spec = rfft(ts.samples, nfft);
  const double df = ts.fs / static_cast<double>(nfft);
  for (std::size_t l = 0; l < spec.size(); ++l) {
    const double f = static_cast<double>(l) * df;
    double g = 0.0;
    if (f >= f_lo && f <= f_hi) {
      g = 1.0;
    } else if (taper_hz > 0.0 && f > f_lo - taper_hz && f < f_lo) {
      g = 0.5 * (1.0 + std::cos(std::numbers::pi * (f_lo - f) / taper_hz));
    } else if (taper_hz > 0.0 && f > f_hi && f < f_hi + taper_hz) {
      g = 0.5 * (1.0 + std::cos(std::numbers::pi * (f - f_hi) / taper_hz));
    }
    spec[l] *= g;
  }
  std::vector<double> y = irfft(spec, nfft);
  y.resize(n);
  TimeSeries out = ts;
  out.samples = std::move(y);
  return out;
}

void welch_spectrum(const TimeSeries& ts, std::size_t segment_length, std::vector<double>& freqs,
                    std::vector<double>& psd) {
  const std::size_t n = ts.size();
  std::size_t seg = std::min(next_pow2(segment_length), next_pow2(n) / 2);
  seg = std::max<std::size_t>(seg, 16);
  if (seg > n) seg = next_pow2(n) / 2;
  const std::size_t hop = seg / 2;
  const std::vector<double> win = hann_window(seg);
  freqs.assign(seg / 2 + 1, 0.0);
  psd.assign(seg / 2 + 1, 0.0);
  for (std::size_t l = 0; l < freqs.size(); ++l)
    freqs[l] = static_cast<double>(l) * ts.fs / static_cast<double>(seg);
  std::size_t frames = 0;
  for (std::size_t start = 0; start + seg <= n; start += hop, ++frames) {
    std::vector<double> buf(seg);
    for (std::size_t i = 0; i < seg; ++i) buf[i] = ts.samples[start + i] * win[i];
    const std::vector<cplx> bins = rfft(buf, seg);
    for (std::size_t l = 0; l < bins.size(); ++l) psd[l] += std::norm(bins[l]);
  }
  if (frames > 0)
    for (double& p : psd) p /= static_cast<double>(frames);
}

}  // namespace arcwave
