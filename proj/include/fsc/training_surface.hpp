#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fsc/angle.hpp"
#include "fsc/fourier_coder.hpp"

namespace fsc {

/// Detector-level loss weights: total = box_weight * L_box + angle_weight *
/// L_fsc + L_cls. Only the angle term is implemented here.
struct DetectorLossWeights {
  double box_weight;
  double angle_weight;
};

inline constexpr DetectorLossWeights kDefaultLossWeights{1.0, 0.2};
/// Setting used for single-frequency training on ship imagery.
inline constexpr DetectorLossWeights kShipLossWeights{0.7, 0.6};

struct LossSpec {
  /// Smooth-L1 transition point.
  double beta = 1.0;
  double manifold_weight = 1.0;
  CoderSpec spec;

  void validate() const;
};

struct LossResult {
  double total = 0.0;
  double fit_term = 0.0;
  double manifold_term = 0.0;
  /// d total / d pred.
  std::vector<double> gradient;
  /// d manifold_term / d pred (unweighted).
  std::vector<double> manifold_gradient;
};

/// 2 * sigmoid(x) - 1, elementwise. Equals tanh(x / 2).
std::vector<double> normalize_logits(std::span<const double> raw);

double smooth_l1(double x, double target, double beta);

/// d smooth_l1 / dx. At |x - target| == beta the quadratic branch is used;
/// both one-sided derivatives agree there.
double smooth_l1_grad(double x, double target, double beta);

/// Target fitting over every channel plus the unit-circle penalty
/// sum_k smooth_l1(cos_k^2 + sin_k^2, 1). All terms and the gradient are
/// divided by `num_positive`.
LossResult fsc_loss(std::span<const double> pred, const OrientedAngle& gt_angle, const LossSpec& spec,
                    double num_positive = 1.0);

using ScalarField = std::function<double(std::span<const double>)>;

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> finite_diff_grad(const ScalarField& f, std::span<const double> x, double h = 1e-6);

}  // namespace fsc
