#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcwave {

/// Execution policy for the data-parallel kernels. Serial is the reference
/// path kept for testing; Parallel uses OpenMP worksharing. Both must
/// produce bit-identical results (each output slot is computed
/// independently with a fixed per-slot summation order).
enum class Exec { Serial, Parallel };

/// Uniformly sampled real signal. t0 is the absolute time of samples[0].
struct TimeSeries {
  double fs = 0.0;
  double t0 = 0.0;
  std::vector<double> samples;

  std::size_t size() const { return samples.size(); }
  double time_at(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
  double duration() const { return static_cast<double>(samples.size()) / fs; }
};

/// Thrown when input data or parameters violate a documented contract.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a computation cannot proceed (singular configuration,
/// unresolvable request) even though the inputs were individually valid.
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace arcwave
