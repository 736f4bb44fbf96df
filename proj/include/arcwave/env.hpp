#pragma once

#include <string>
#include <vector>

#include "arcwave/types.hpp"

namespace arcwave {

/// Depth-sampled sound speed c(z). Depths strictly increasing starting at
/// the surface (z = 0); speeds sanity-bounded to [1300, 1700] m/s. Below
/// the last sample the profile extrapolates at constant speed; z < 0 is
/// out of domain.
struct SoundSpeedProfile {
  std::vector<double> depths;  // m
  std::vector<double> speeds;  // m/s

  static SoundSpeedProfile from_samples(std::vector<double> depths, std::vector<double> speeds);

  double speed_at(double z) const;  // linear interpolation, constant below last sample
  double min_speed() const;
  double max_speed() const;
  std::size_t size() const { return depths.size(); }
};

/// Parametric dual-channel profile family:
///   c(z) = surface_speed + surface_gradient*z
///          - sum_i duct_strength_i * exp(-((z - duct_depth_i)/duct_width_i)^2)
struct DualChannelParams {
  double surface_speed = 1435.0;    // m/s
  double surface_gradient = 0.016;  // 1/s, upward-refracting background
  double duct1_depth = 60.0;        // m
  double duct2_depth = 200.0;       // m
  double duct1_strength = 3.0;      // m/s
  double duct2_strength = 6.0;      // m/s
  double duct1_width = 30.0;        // m
  double duct2_width = 80.0;        // m

  void validate() const;
  double speed_at(double z) const;  // closed form
};

enum class BottomModel { Rigid, Halfspace };

/// Range-independent waveguide: water column over a fluid bottom.
struct Waveguide {
  SoundSpeedProfile ssp;
  double water_depth = 0.0;        // m
  double water_density = 1024.0;   // kg/m^3
  double bottom_speed = 1700.0;    // m/s (HALFSPACE)
  double bottom_density = 1800.0;  // kg/m^3
  double bottom_attenuation = 0.0; // dB per wavelength in the bottom
  BottomModel bottom_model = BottomModel::Halfspace;

  void validate() const;
  double speed_at(double z) const;    // water SSP above water_depth, bottom below
  double density_at(double z) const;
};

/// Water depth versus range along a propagation path.
struct BathymetryTransect {
  std::vector<double> ranges;  // m, strictly increasing, first == 0
  std::vector<double> depths;  // m, > 0

  static BathymetryTransect from_points(std::vector<double> ranges, std::vector<double> depths);
  double depth_at(double r) const;
};

SoundSpeedProfile load_ssp_csv(const std::string& path);
void save_ssp_csv(const SoundSpeedProfile& ssp, const std::string& path);

BathymetryTransect load_transect_csv(const std::string& path);

/// Samples the closed-form dual-channel profile on [0, max_depth] at step dz.
SoundSpeedProfile build_dual_channel_ssp(const DualChannelParams& params, double max_depth, double dz);

/// Minimum linearly-interpolated depth over [r0, r1] of the transect.
double min_depth_over(const BathymetryTransect& transect, double r0, double r1);

}  // namespace arcwave
