#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fsc/angle.hpp"
#include "fsc/any_coder.hpp"

namespace fsc {

/// Component noise: every channel becomes m * clean + N(0, sigma^2).
struct NoiseModel {
  double sigma = 0.0;
  double modulus_scale = 1.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Applies modulus collapse and i.i.d. Gaussian noise. Channel i of trial t
/// draws from the counter-based stream keyed by (rng_seed, t, i), so the
/// result does not depend on evaluation order.
std::vector<double> perturb(std::span<const double> clean, const NoiseModel& model,
                            std::uint64_t trial_index);

/// First-order phase deviation of arctan2(s, c) under (eps_s, eps_c):
/// eps_s * c - eps_c * s. Requires c^2 + s^2 = 1 within 1e-9.
double taylor_error(double s, double c, double eps_s, double eps_c);

enum class VarianceLaw { fsc_dual, psc_dual };

/// Closed-form decoded-angle variance at unit modulus:
/// sigma^2 / 16 for dual-frequency FSC, sigma^2 / 24 for PSCD.
double theoretical_variance(VarianceLaw law, double sigma);

/// The law that applies to `coder`, if any (dual-frequency coders only).
std::optional<VarianceLaw> variance_law_for(const AnyCoder& coder);

/// Ground-truth protocol: `n_angles` evenly spaced angles over the range,
/// trials split as evenly as possible (earlier angles take the remainder).
struct UniformSweep {
  int n_angles = 360;
};

using GroundTruth = std::variant<OrientedAngle, UniformSweep>;

struct SimulationOptions {
  /// |error| above this counts as a cycle (branch) error.
  double cycle_threshold = kPi / 4;
  int histogram_bins = 180;
  /// Worker threads; results are bit-identical for any value >= 1.
  unsigned workers = 1;
};

struct HistogramBin {
  double center = 0.0;
  std::uint64_t count = 0;
};

struct SimulationReport {
  std::uint64_t trials = 0;
  /// Sample variance of the signed error over trials that are not cycle
  /// errors. Cycle errors are reported through cycle_error_rate instead.
  double variance_estimate = 0.0;
  /// Sample variance over every trial.
  double variance_all = 0.0;
  double mean_error = 0.0;
  double mae_decoded = 0.0;
  double cycle_error_rate = 0.0;
  std::uint64_t cycle_errors = 0;
  /// Trials whose decode hit a degenerate modulus. They are recorded with
  /// an error of period/2 and therefore also count as cycle errors.
  std::uint64_t degenerate_count = 0;
  std::uint64_t heuristic_count = 0;
  double cycle_threshold = kPi / 4;
  std::vector<HistogramBin> histogram;
  std::optional<double> theoretical_variance;
  /// Signed wrapped errors in trial order.
  std::vector<double> errors;
};

SimulationReport monte_carlo_variance(const AnyCoder& coder, const GroundTruth& truth,
                                      const NoiseModel& model, std::uint64_t trials,
                                      const SimulationOptions& options = {});

/// Fraction of |error| > threshold.
double cycle_error_rate(std::span<const double> errors, double threshold = kPi / 4);

/// Mean absolute component error over every sample and channel.
double mae_components(std::span<const std::vector<double>> pred,
                      std::span<const std::vector<double>> gt);

/// Mean period-aware distance between decoded and true angles.
double mae_decoded(std::span<const double> pred, std::span<const double> gt, double period);

struct CdfPoint {
  double threshold = 0.0;
  double fraction = 0.0;
};

/// Fraction of |error| <= threshold for each (ascending) threshold.
std::vector<CdfPoint> error_cdf(std::span<const double> errors, std::span<const double> thresholds);

/// Circular histogram of errors over one period. Bin k is centered at
/// -period/2 + k * period / n_bins, so one bin is always centered at 0.
std::vector<HistogramBin> error_histogram(std::span<const double> errors, int n_bins,
                                          double period = kPi);

struct MetricsReport {
  double mae_c = 0.0;
  double mae_d = 0.0;
  std::vector<CdfPoint> cdf_points;
};

MetricsReport compute_metrics(std::span<const std::vector<double>> pred_components,
                              std::span<const std::vector<double>> gt_components,
                              std::span<const double> pred_angles, std::span<const double> gt_angles,
                              double period, std::span<const double> cdf_thresholds);

}  // namespace fsc
