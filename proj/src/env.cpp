#include "arcwave/env.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace arcwave {

namespace {

constexpr double kSpeedLo = 1300.0;
constexpr double kSpeedHi = 1700.0;

double lerp_monotone(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

}  // namespace

SoundSpeedProfile SoundSpeedProfile::from_samples(std::vector<double> depths, std::vector<double> speeds) {
  if (depths.size() != speeds.size()) throw InvalidInput("ssp: depth/speed count mismatch");
  if (depths.size() < 2) throw InvalidInput("ssp: at least 2 samples required");
  if (depths.front() != 0.0) throw InvalidInput("ssp: first depth must be 0");
  for (std::size_t i = 1; i < depths.size(); ++i) {
    if (depths[i] == depths[i - 1])
      throw InvalidInput("ssp: duplicate depth " + std::to_string(depths[i]));
    if (depths[i] < depths[i - 1]) throw InvalidInput("ssp: depths must be strictly increasing");
  }
  for (double s : speeds) {
    if (!(s >= kSpeedLo && s <= kSpeedHi))
      throw InvalidInput("ssp: speed " + std::to_string(s) + " outside [1300, 1700] m/s");
  }
  SoundSpeedProfile p;
  p.depths = std::move(depths);
  p.speeds = std::move(speeds);
  return p;
}

double SoundSpeedProfile::speed_at(double z) const {
  if (z < 0.0) throw InvalidInput("ssp: depth above surface requested");
  return lerp_monotone(depths, speeds, z);
}

double SoundSpeedProfile::min_speed() const { return *std::min_element(speeds.begin(), speeds.end()); }
double SoundSpeedProfile::max_speed() const { return *std::max_element(speeds.begin(), speeds.end()); }

void DualChannelParams::validate() const {
  if (!(duct1_depth > 0.0 && duct1_depth < duct2_depth))
    throw InvalidInput("dual-channel: require 0 < duct1_depth < duct2_depth");
  if (duct1_strength < 0.0 || duct2_strength < 0.0)
    throw InvalidInput("dual-channel: duct strengths must be >= 0");
  if (duct1_width <= 0.0 || duct2_width <= 0.0)
    throw InvalidInput("dual-channel: duct widths must be > 0");
}

double DualChannelParams::speed_at(double z) const {
  auto dip = [z](double d, double s, double w) {
    const double a = (z - d) / w;
    return s * std::exp(-a * a);
  };
  return surface_speed + surface_gradient * z - dip(duct1_depth, duct1_strength, duct1_width) -
         dip(duct2_depth, duct2_strength, duct2_width);
}

void Waveguide::validate() const {
  if (ssp.size() < 2) throw InvalidInput("waveguide: SSP missing");
  if (water_depth <= 0.0) throw InvalidInput("waveguide: water_depth must be > 0");
  if (water_density <= 0.0 || bottom_density <= 0.0) throw InvalidInput("waveguide: densities must be > 0");
  if (bottom_attenuation < 0.0) throw InvalidInput("waveguide: attenuation must be >= 0");
  if (bottom_model == BottomModel::Halfspace) {
    double cmax = 0.0;
    for (double z = 0.0; z <= water_depth; z += water_depth / 2000.0) cmax = std::max(cmax, ssp.speed_at(z));
    if (bottom_speed <= cmax)
      throw InvalidInput("waveguide: halfspace bottom_speed must exceed max water speed");
  }
}

double Waveguide::speed_at(double z) const {
  if (z > water_depth && bottom_model == BottomModel::Halfspace) return bottom_speed;
  return ssp.speed_at(std::min(z, water_depth));
}

double Waveguide::density_at(double z) const {
  return (z > water_depth && bottom_model == BottomModel::Halfspace) ? bottom_density : water_density;
}

BathymetryTransect BathymetryTransect::from_points(std::vector<double> ranges, std::vector<double> depths) {
  if (ranges.size() != depths.size()) throw InvalidInput("transect: range/depth count mismatch");
  if (ranges.empty()) throw InvalidInput("transect: empty");
  if (ranges.front() != 0.0) throw InvalidInput("transect: first range must be 0");
  for (std::size_t i = 1; i < ranges.size(); ++i)
    if (ranges[i] <= ranges[i - 1]) throw InvalidInput("transect: ranges must be strictly increasing");
  for (double d : depths)
    if (d <= 0.0) throw InvalidInput("transect: depths must be > 0");
  BathymetryTransect t;
  t.ranges = std::move(ranges);
  t.depths = std::move(depths);
  return t;
}

double BathymetryTransect::depth_at(double r) const {
  if (r < ranges.front() || r > ranges.back()) throw InvalidInput("transect: range outside transect");
  return lerp_monotone(ranges, depths, r);
}

namespace {

std::vector<std::pair<double, double>> parse_two_column_csv(const std::string& path, const std::string& header) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw InvalidInput(path + ": expected header '" + header + "', got '" + line + "'");
  std::vector<std::pair<double, double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw InvalidInput(path + ": malformed row " + std::to_string(lineno));
    if (std::getline(ss, extra, ','))
      throw InvalidInput(path + ": too many columns at row " + std::to_string(lineno));
    try {
      std::size_t pa = 0, pb = 0;
      const double x = std::stod(a, &pa);
      const double y = std::stod(b, &pb);
      if (pa != a.size() || pb != b.size()) throw std::invalid_argument("trailing junk");
      rows.emplace_back(x, y);
    } catch (const std::exception&) {
      throw InvalidInput(path + ": malformed row " + std::to_string(lineno));
    }
  }
  return rows;
}

}  // namespace

SoundSpeedProfile load_ssp_csv(const std::string& path) {
  auto rows = parse_two_column_csv(path, "depth_m,speed_mps");
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first)
      throw InvalidInput(path + ": duplicate depth " + std::to_string(rows[i].first) + " at row " +
                         std::to_string(i + 2));
  }
  std::vector<double> depths, speeds;
  depths.reserve(rows.size());
  speeds.reserve(rows.size());
  for (const auto& [d, s] : rows) {
    depths.push_back(d);
    speeds.push_back(s);
  }
  return SoundSpeedProfile::from_samples(std::move(depths), std::move(speeds));
}

void save_ssp_csv(const SoundSpeedProfile& ssp, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw InvalidInput("cannot write " + path);
  out << "depth_m,speed_mps\n";
  out.precision(10);
  for (std::size_t i = 0; i < ssp.size(); ++i) out << ssp.depths[i] << "," << ssp.speeds[i] << "\n";
}

BathymetryTransect load_transect_csv(const std::string& path) {
  auto rows = parse_two_column_csv(path, "range_m,depth_m");
  std::vector<double> ranges, depths;
  for (const auto& [r, d] : rows) {
    ranges.push_back(r);
    depths.push_back(d);
  }
  return BathymetryTransect::from_points(std::move(ranges), std::move(depths));
}

SoundSpeedProfile build_dual_channel_ssp(const DualChannelParams& params, double max_depth, double dz) {
  params.validate();
  if (dz <= 0.0) throw InvalidInput("dual-channel: dz must be > 0");
  if (max_depth <= params.duct2_depth) throw InvalidInput("dual-channel: max_depth must exceed duct2_depth");
  const auto n = static_cast<std::size_t>(std::ceil(max_depth / dz));
  std::vector<double> depths(n + 1), speeds(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double z = std::min(static_cast<double>(i) * dz, max_depth);
    depths[i] = z;
    speeds[i] = params.speed_at(z);
  }
  return SoundSpeedProfile::from_samples(std::move(depths), std::move(speeds));
}

double min_depth_over(const BathymetryTransect& transect, double r0, double r1) {
  if (!(r0 >= 0.0 && r0 < r1)) throw InvalidInput("min_depth_over: require 0 <= r0 < r1");
  if (r1 > transect.ranges.back()) throw InvalidInput("min_depth_over: r1 beyond transect");
  // piecewise linear: minimum is attained at an endpoint or an interior vertex
  double best = std::min(transect.depth_at(r0), transect.depth_at(r1));
  for (std::size_t i = 0; i < transect.ranges.size(); ++i) {
    if (transect.ranges[i] > r0 && transect.ranges[i] < r1) best = std::min(best, transect.depths[i]);
  }
  return best;
}

}  // namespace arcwave
