#pragma once

#include <vector>

#include "arcwave/env.hpp"
#include "arcwave/types.hpp"

namespace arcwave {

struct Mode {
  int index = 0;                      // 1-based, descending wavenumber
  double wavenumber = 0.0;            // rad/m
  double attenuation = 0.0;           // nepers/m
  double group_velocity = 0.0;        // m/s, 0 until filled
  std::vector<double> eigenfunction;  // on ModeSet::grid, 1/sqrt(m)
};

/// Trapped modes of a waveguide at one frequency. The grid covers the
/// water column and, for HALFSPACE bottoms, a basement extension of twice
/// the water depth. Eigenfunctions are normalized to
/// integral(psi^2 / rho dz) = 1 (trapezoid on the grid) with psi(0) = 0
/// and positive slope at the surface.
struct ModeSet {
  double frequency = 0.0;
  double dz = 0.0;
  std::vector<double> grid;  // depths, grid[0] == 0
  std::vector<Mode> modes;
  bool below_cutoff = false;  // no trapped mode at this frequency

  std::size_t size() const { return modes.size(); }
  /// Linear interpolation of eigenfunction m (0-based position) at depth z.
  double psi_at(std::size_t mode_pos, double z) const;
};

/// Group velocities per mode on a frequency grid. Cells where a mode is
/// not trapped hold NaN and are omitted from exports.
struct DispersionTable {
  struct Curve {
    int mode = 0;            // tracked identity, 1-based
    std::vector<double> k;   // rad/m, NaN where absent
    std::vector<double> vg;  // m/s, NaN where absent
  };
  std::vector<double> frequencies;
  std::vector<Curve> curves;

  const Curve* find_mode(int mode) const;
  /// Mean group velocity of a mode over [f_lo, f_hi]; throws if the mode
  /// has no cell in the band.
  double band_mean_vg(int mode, double f_lo, double f_hi) const;
  /// Min and max group velocity of a mode over the band.
  std::pair<double, double> band_minmax_vg(int mode, double f_lo, double f_hi) const;
};

/// Finite-difference Sturm-Liouville solve at one frequency. dz <= 0
/// selects min(1 m, wavelength/20); an explicit dz coarser than
/// wavelength/10 is an error. Returns up to max_modes trapped modes sorted
/// by descending wavenumber; an empty set with below_cutoff set when no
/// mode is trapped.
ModeSet solve_modes(const Waveguide& wg, double frequency, int max_modes, double dz = 0.0);

/// Fills group velocities via the perturbation identity
///   vg = k / (omega * integral(psi^2 / (rho c^2) dz)).
ModeSet group_velocity_perturbation(ModeSet ms, const Waveguide& wg);

/// Modal group velocities across [f_min, f_max] at step df. Mode identity
/// is tracked across frequencies by eigenfunction correlation; output is
/// independent of the execution policy.
DispersionTable dispersion_table(const Waveguide& wg, double f_min, double f_max, double df,
                                 int max_modes, Exec exec = Exec::Parallel);

/// Deepest grid depth (within the water column) where the mode still
/// propagates: omega^2/c(z)^2 - k^2 > 0.
double lower_turning_depth(const ModeSet& ms, const Waveguide& wg, std::size_t mode_pos);

/// Seamount blocking approximation: keeps only modes whose lower turning
/// depth does not exceed the minimum water depth along the path.
ModeSet cutoff_filter(const ModeSet& ms, double min_depth_on_path, const Waveguide& wg);

}  // namespace arcwave
