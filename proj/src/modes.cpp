#include "arcwave/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace arcwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Discretization of  (1/rho Psi')' + (omega^2/c^2)(1/rho) Psi = k^2 (1/rho) Psi
// on a uniform grid, reduced to a standard symmetric tridiagonal problem
// T y = k^2 y with T = M^{-1/2} (-L) M^{-1/2}, y = M^{1/2} Psi.
struct Assembly {
  std::vector<double> z;      // nodes 0..n
  std::vector<double> c;      // speed at nodes
  std::vector<double> w;      // 1/rho at nodes
  std::vector<double> quad;   // trapezoid weights for integral(. /rho dz)
  std::vector<double> diag;   // T diagonal (unknowns only)
  std::vector<double> off;    // T off-diagonal
  std::vector<double> scale;  // M^{-1/2} per unknown
  std::size_t first = 1;      // grid index of first unknown
  double dz = 0.0;
  std::size_t water_nodes = 0;  // grid index of the seafloor node
};

Assembly assemble(const Waveguide& wg, double frequency, double dz_req) {
  const double omega = 2.0 * std::numbers::pi * frequency;
  const double lambda_min = wg.ssp.min_speed() / frequency;
  double dz = dz_req;
  if (dz <= 0.0) dz = std::min(1.0, lambda_min / 20.0);
  if (dz > lambda_min / 10.0)
    throw InvalidInput("solve_modes: grid too coarse (dz must be <= wavelength/10)");

  const bool half = wg.bottom_model == BottomModel::Halfspace;
  const auto n_water = static_cast<std::size_t>(std::ceil(wg.water_depth / dz));
  dz = wg.water_depth / static_cast<double>(n_water);  // land a node on the seafloor
  const std::size_t n_bot = half ? static_cast<std::size_t>(std::ceil(2.0 * wg.water_depth / dz)) : 0;
  const std::size_t n = n_water + n_bot;  // nodes 0..n

  Assembly a;
  a.dz = dz;
  a.water_nodes = n_water;
  a.z.resize(n + 1);
  a.c.resize(n + 1);
  a.w.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double z = static_cast<double>(j) * dz;
    a.z[j] = z;
    a.c[j] = wg.speed_at(z);
    a.w[j] = 1.0 / wg.density_at(z);
  }
  // interface midpoints carry the density jump
  std::vector<double> wmid(n);
  for (std::size_t j = 0; j < n; ++j) wmid[j] = 1.0 / wg.density_at(a.z[j] + 0.5 * dz);

  a.quad.assign(n + 1, 0.0);
  for (std::size_t j = 0; j <= n; ++j) {
    a.quad[j] = a.w[j] * dz;
    if (j == 0 || j == n) a.quad[j] *= 0.5;
  }

  // unknowns: j = 1..n-1 (Dirichlet at both ends) or 1..n (Neumann bottom)
  const bool neumann_bottom = !half;
  const std::size_t m = neumann_bottom ? n : n - 1;
  a.first = 1;
  std::vector<double> L(m), mass(m);
  a.off.assign(m > 0 ? m - 1 : 0, 0.0);
  const double inv_dz2 = 1.0 / (dz * dz);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + 1;
    if (neumann_bottom && j == n) {
      L[i] = wmid[n - 1] * inv_dz2 - 0.5 * a.w[j] * (omega / a.c[j]) * (omega / a.c[j]);
      mass[i] = 0.5 * a.w[j];
    } else {
      L[i] = (wmid[j - 1] + wmid[j]) * inv_dz2 - a.w[j] * (omega / a.c[j]) * (omega / a.c[j]);
      mass[i] = a.w[j];
    }
    if (i + 1 < m) a.off[i] = -wmid[j] * inv_dz2;
  }
  a.diag.resize(m);
  a.scale.resize(m);
  for (std::size_t i = 0; i < m; ++i) a.scale[i] = 1.0 / std::sqrt(mass[i]);
  for (std::size_t i = 0; i < m; ++i) a.diag[i] = -L[i] * a.scale[i] * a.scale[i];
  for (std::size_t i = 0; i + 1 < m; ++i) a.off[i] = -a.off[i] * a.scale[i] * a.scale[i + 1];
  return a;
}

// eigenvalues of (diag, off) strictly below x, by Sturm sequence
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off2, double x,
                double pivmin) {
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    q = diag[i] - x - off2[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// j-th largest eigenvalue (1-based) within the bracket [lo, hi]
double bisect_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off2,
                         int j_largest, double lo, double hi, double pivmin) {
  const int n = static_cast<int>(diag.size());
  const int want = n - j_largest + 1;  // index among ascending eigenvalues
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count(diag, off2, mid, pivmin) >= want)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-14 * std::max({std::abs(lo), std::abs(hi), 1e-30})) break;
  }
  return 0.5 * (lo + hi);
}

// (T - lambda I) x = b by tridiagonal LU with partial pivoting
void tridiag_shifted_solve(const std::vector<double>& diag, const std::vector<double>& off,
                           double lambda, std::vector<double>& x) {
  const std::size_t n = diag.size();
  std::vector<double> d0(n), d1(n, 0.0), d2(n, 0.0), sub(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d0[i] = diag[i] - lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d1[i] = off[i];
    sub[i + 1] = off[i];
  }
  const double tiny = 1e-300;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d0[i]) >= std::abs(sub[i + 1])) {
      double piv = d0[i];
      if (std::abs(piv) < tiny) piv = tiny;
      const double m = sub[i + 1] / piv;
      d0[i + 1] -= m * d1[i];
      x[i + 1] -= m * x[i];
      sub[i + 1] = 0.0;  // reused below as the elimination multiplier slot
    } else {
      std::swap(d0[i], sub[i + 1]);
      std::swap(d1[i], d0[i + 1]);
      std::swap(d2[i], d1[i + 1]);
      std::swap(x[i], x[i + 1]);
      double piv = d0[i];
      if (std::abs(piv) < tiny) piv = tiny;
      const double m = sub[i + 1] / piv;
      d0[i + 1] -= m * d1[i];
      d1[i + 1] -= m * d2[i];
      x[i + 1] -= m * x[i];
      sub[i + 1] = 0.0;
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double v = x[ii];
    if (ii + 1 < n) v -= d1[ii] * x[ii + 1];
    if (ii + 2 < n) v -= d2[ii] * x[ii + 2];
    double piv = d0[ii];
    if (std::abs(piv) < tiny) piv = (piv < 0.0 ? -tiny : tiny);
    x[ii] = v / piv;
  }
}

void normalize_l2(std::vector<double>& v) {
  double s = 0.0;
  for (double t : v) s += t * t;
  s = std::sqrt(s);
  if (s > 0.0) {
    for (double& t : v) t /= s;
  }
}

std::vector<double> inverse_iteration(const std::vector<double>& diag, const std::vector<double>& off,
                                      double lambda, const std::vector<std::vector<double>>& avoid) {
  const std::size_t n = diag.size();
  std::vector<double> x(n);
  // deterministic pseudo-random start keeps runs reproducible
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < n; ++i) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    x[i] = 0.5 + static_cast<double>(state % 1000003) / 1000003.0;
  }
  normalize_l2(x);
  for (int it = 0; it < 3; ++it) {
    tridiag_shifted_solve(diag, off, lambda, x);
    for (const auto& u : avoid) {
      double dp = 0.0;
      for (std::size_t i = 0; i < n; ++i) dp += x[i] * u[i];
      for (std::size_t i = 0; i < n; ++i) x[i] -= dp * u[i];
    }
    normalize_l2(x);
  }
  return x;
}

}  // namespace

double ModeSet::psi_at(std::size_t mode_pos, double z) const {
  const auto& psi = modes.at(mode_pos).eigenfunction;
  if (z <= grid.front() || z >= grid.back()) return 0.0;
  const double u = z / dz;
  const auto j = static_cast<std::size_t>(u);
  const double t = u - static_cast<double>(j);
  return psi[j] * (1.0 - t) + psi[j + 1] * t;
}

ModeSet solve_modes(const Waveguide& wg, double frequency, int max_modes, double dz) {
  wg.validate();
  if (frequency <= 0.0) throw InvalidInput("solve_modes: frequency must be > 0");
  if (max_modes <= 0) throw InvalidInput("solve_modes: max_modes must be > 0");

  const double omega = 2.0 * std::numbers::pi * frequency;
  Assembly a = assemble(wg, frequency, dz);
  const std::size_t m = a.diag.size();

  std::vector<double> off2(m > 0 ? m - 1 : 0);
  for (std::size_t i = 0; i + 1 < m; ++i) off2[i] = a.off[i] * a.off[i];
  double emax = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) emax = std::max(emax, std::abs(a.off[i]));
  const double pivmin = std::max(emax * emax, 1e-300) * 1e-18;

  // trapped-mode threshold: phase speed below the basement speed
  const bool half = wg.bottom_model == BottomModel::Halfspace;
  const double thr = half ? (omega / wg.bottom_speed) * (omega / wg.bottom_speed) : 0.0;
  double hi = a.diag[0];
  for (std::size_t i = 0; i < m; ++i) {
    double g = a.diag[i];
    if (i > 0) g += std::abs(a.off[i - 1]);
    if (i + 1 < m) g += std::abs(a.off[i]);
    hi = std::max(hi, g);
  }
  hi += 1.0;

  ModeSet ms;
  ms.frequency = frequency;
  ms.dz = a.dz;
  ms.grid = a.z;

  const int n_trapped = static_cast<int>(m) - sturm_count(a.diag, off2, thr, pivmin);
  const int n_modes = std::min(max_modes, n_trapped);
  if (n_modes <= 0) {
    ms.below_cutoff = true;
    return ms;
  }

  const double loss_tangent = wg.bottom_attenuation / (40.0 * std::numbers::pi * std::log10(std::numbers::e));
  std::vector<std::vector<double>> found;
  std::vector<double> lambdas;
  for (int j = 1; j <= n_modes; ++j) {
    const double lambda = bisect_eigenvalue(a.diag, off2, j, thr, hi, pivmin);
    // orthogonalize only against near-degenerate neighbours
    std::vector<std::vector<double>> avoid;
    for (std::size_t p = 0; p < lambdas.size(); ++p) {
      if (std::abs(lambdas[p] - lambda) < 1e-9 * std::max(std::abs(lambda), 1.0)) avoid.push_back(found[p]);
    }
    std::vector<double> y = inverse_iteration(a.diag, a.off, lambda, avoid);
    lambdas.push_back(lambda);
    found.push_back(y);

    Mode mode;
    mode.index = j;
    mode.wavenumber = std::sqrt(lambda);
    mode.eigenfunction.assign(a.z.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) mode.eigenfunction[a.first + i] = y[i] * a.scale[i];
    // trapezoid normalization of integral(psi^2/rho dz)
    double nrm = 0.0;
    for (std::size_t i = 0; i < a.z.size(); ++i)
      nrm += mode.eigenfunction[i] * mode.eigenfunction[i] * a.quad[i];
    nrm = std::sqrt(nrm);
    double sign = mode.eigenfunction[1] >= 0.0 ? 1.0 : -1.0;
    for (double& v : mode.eigenfunction) v *= sign / nrm;

    if (half && loss_tangent > 0.0) {
      double sed = 0.0;
      for (std::size_t i = a.water_nodes; i < a.z.size(); ++i) {
        double wq = a.quad[i];
        if (i == a.water_nodes) wq *= 0.5;  // sediment starts at the interface node
        const double oc = omega / a.c[i];
        sed += oc * oc * mode.eigenfunction[i] * mode.eigenfunction[i] * wq;
      }
      mode.attenuation = loss_tangent * sed / mode.wavenumber;
    }
    ms.modes.push_back(std::move(mode));
  }
  return ms;
}

ModeSet group_velocity_perturbation(ModeSet ms, const Waveguide& wg) {
  const double omega = 2.0 * std::numbers::pi * ms.frequency;
  if (ms.modes.empty()) return ms;
  const std::size_t n = ms.grid.size();
  std::vector<double> quad(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = ms.grid[i];
    c[i] = wg.speed_at(z);
    quad[i] = ms.dz / wg.density_at(z);
    if (i == 0 || i + 1 == n) quad[i] *= 0.5;
  }
  for (auto& mode : ms.modes) {
    double integral = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      integral += mode.eigenfunction[i] * mode.eigenfunction[i] * quad[i] / (c[i] * c[i]);
    mode.group_velocity = mode.wavenumber / (omega * integral);
  }
  return ms;
}

const DispersionTable::Curve* DispersionTable::find_mode(int mode) const {
  for (const auto& c : curves)
    if (c.mode == mode) return &c;
  return nullptr;
}

double DispersionTable::band_mean_vg(int mode, double f_lo, double f_hi) const {
  const Curve* c = find_mode(mode);
  if (!c) throw ComputeError("dispersion table: mode " + std::to_string(mode) + " absent");
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (frequencies[i] < f_lo || frequencies[i] > f_hi) continue;
    if (std::isnan(c->vg[i])) continue;
    sum += c->vg[i];
    ++n;
  }
  if (n == 0) throw ComputeError("dispersion table: mode " + std::to_string(mode) + " has no cell in band");
  return sum / n;
}

std::pair<double, double> DispersionTable::band_minmax_vg(int mode, double f_lo, double f_hi) const {
  const Curve* c = find_mode(mode);
  if (!c) throw ComputeError("dispersion table: mode " + std::to_string(mode) + " absent");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (frequencies[i] < f_lo || frequencies[i] > f_hi) continue;
    if (std::isnan(c->vg[i])) continue;
    lo = std::min(lo, c->vg[i]);
    hi = std::max(hi, c->vg[i]);
  }
  if (!(lo <= hi)) throw ComputeError("dispersion table: mode " + std::to_string(mode) + " has no cell in band");
  return {lo, hi};
}

DispersionTable dispersion_table(const Waveguide& wg, double f_min, double f_max, double df,
                                 int max_modes, Exec exec) {
  if (!(f_min > 0.0 && f_min < f_max)) throw InvalidInput("dispersion_table: require 0 < f_min < f_max");
  if (df <= 0.0) throw InvalidInput("dispersion_table: df must be > 0");

  std::vector<double> freqs;
  for (double f = f_min; f <= f_max + 1e-9 * df; f += df) freqs.push_back(f);
  const auto nf = static_cast<std::ptrdiff_t>(freqs.size());

  // one shared grid so eigenfunction correlations are plain dot products
  const double dz_shared = std::min(1.0, wg.ssp.min_speed() / f_max / 20.0);

  std::vector<ModeSet> sets(freqs.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < nf; ++i)
      sets[i] = group_velocity_perturbation(solve_modes(wg, freqs[i], max_modes, dz_shared), wg);
  } else {
    for (std::ptrdiff_t i = 0; i < nf; ++i)
      sets[i] = group_velocity_perturbation(solve_modes(wg, freqs[i], max_modes, dz_shared), wg);
  }

  // sequential identity-tracking pass (independent of execution policy)
  DispersionTable table;
  table.frequencies = freqs;
  std::vector<std::vector<int>> labels(freqs.size());
  int next_label = 1;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    labels[i].assign(sets[i].size(), 0);
    if (sets[i].modes.empty()) continue;
    if (i == 0 || sets[i - 1].modes.empty()) {
      for (std::size_t p = 0; p < sets[i].size(); ++p) labels[i][p] = next_label++;
      continue;
    }
    const auto& prev = sets[i - 1];
    const auto& quad = sets[i];  // same grid: correlation via the /rho trapezoid product
    std::vector<double> wq(quad.grid.size());
    for (std::size_t g = 0; g < quad.grid.size(); ++g) {
      wq[g] = quad.dz / wg.density_at(quad.grid[g]);
      if (g == 0 || g + 1 == quad.grid.size()) wq[g] *= 0.5;
    }
    std::vector<bool> taken(prev.size(), false);
    for (std::size_t p = 0; p < quad.size(); ++p) {
      double best = 0.0;
      std::ptrdiff_t best_q = -1;
      for (std::size_t q = 0; q < prev.size(); ++q) {
        if (taken[q]) continue;
        double dp = 0.0;
        for (std::size_t g = 0; g < wq.size(); ++g)
          dp += quad.modes[p].eigenfunction[g] * prev.modes[q].eigenfunction[g] * wq[g];
        if (std::abs(dp) > best) {
          best = std::abs(dp);
          best_q = static_cast<std::ptrdiff_t>(q);
        }
      }
      if (best_q >= 0 && best > 0.5) {
        labels[i][p] = labels[i - 1][static_cast<std::size_t>(best_q)];
        taken[static_cast<std::size_t>(best_q)] = true;
      } else {
        labels[i][p] = next_label++;
      }
    }
  }

  for (int label = 1; label < next_label; ++label) {
    DispersionTable::Curve curve;
    curve.mode = label;
    curve.k.assign(freqs.size(), kNaN);
    curve.vg.assign(freqs.size(), kNaN);
    bool any = false;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t p = 0; p < sets[i].size(); ++p) {
        if (labels[i][p] == label) {
          curve.k[i] = sets[i].modes[p].wavenumber;
          curve.vg[i] = sets[i].modes[p].group_velocity;
          any = true;
        }
      }
    }
    if (any) table.curves.push_back(std::move(curve));
  }
  return table;
}

double lower_turning_depth(const ModeSet& ms, const Waveguide& wg, std::size_t mode_pos) {
  const double omega = 2.0 * std::numbers::pi * ms.frequency;
  const double k = ms.modes.at(mode_pos).wavenumber;
  double depth = 0.0;
  for (std::size_t i = 0; i < ms.grid.size(); ++i) {
    const double z = ms.grid[i];
    if (z > wg.water_depth) break;
    const double oc = omega / wg.speed_at(z);
    if (oc * oc - k * k > 0.0) depth = z;
  }
  return depth;
}

ModeSet cutoff_filter(const ModeSet& ms, double min_depth_on_path, const Waveguide& wg) {
  if (min_depth_on_path <= 0.0) throw InvalidInput("cutoff_filter: min_depth_on_path must be > 0");
  ModeSet out;
  out.frequency = ms.frequency;
  out.dz = ms.dz;
  out.grid = ms.grid;
  out.below_cutoff = ms.below_cutoff;
  for (std::size_t p = 0; p < ms.size(); ++p) {
    if (lower_turning_depth(ms, wg, p) <= min_depth_on_path) out.modes.push_back(ms.modes[p]);
  }
  if (out.modes.empty()) out.below_cutoff = true;
  return out;
}

}  // namespace arcwave
