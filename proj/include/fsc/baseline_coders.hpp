#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "fsc/angle.hpp"
#include "fsc/fourier_coder.hpp"

namespace fsc {

/// Three-step phase-shifting coder. PSCD when `dual_frequency` is set.
struct PscSpec {
  static constexpr int kPhaseCount = 3;
  static constexpr std::array<double, 3> kPhases{0.0, 2 * kPi / 3, 4 * kPi / 3};
  /// sqrt(C^2 + S^2) of a clean synthesis: 3/2.
  static constexpr double kCleanModulus = 1.5;
  /// Threshold value used by the reference detector code.
  static constexpr double kReferenceThreshold = 0.47;

  int omega = 2;
  bool dual_frequency = false;
  /// When set, a synthesized modulus (normalized by kCleanModulus) below
  /// this value forces the decoded angle to 0.
  std::optional<double> heuristic_threshold;
  AngleDefinition definition = AngleDefinition::le90();

  void validate() const;
  int channel_count() const { return dual_frequency ? 6 : 3; }
};

/// Circular smooth label over `n_bins` equal bins of the angle range.
struct CslSpec {
  int n_bins = 45;
  int window_radius = 6;
  AngleDefinition definition = AngleDefinition::le90();

  void validate() const;
  double bin_width() const { return definition.period / n_bins; }
};

struct Synthesis {
  double c = 0.0;
  double s = 0.0;
  double modulus() const;
};

std::vector<double> psc_encode(const OrientedAngle& theta, const PscSpec& spec);

/// C = sum P_k cos(alpha_k), S = -sum P_k sin(alpha_k).
Synthesis psc_synthesize(std::span<const double> p, std::span<const double> alpha);

/// Phase offsets used to synthesize the given harmonic (1 or 2): k * alpha.
std::array<double, 3> psc_phases(int harmonic);

DecodeResult psc_decode(std::span<const double> raw, const PscSpec& spec);

/// Bin index holding `theta`.
int csl_bin(const OrientedAngle& theta, const CslSpec& spec);

/// Smooth one-hot label: Gaussian of sigma = window_radius / 3 in circular
/// bin distance, zero beyond the window radius.
std::vector<double> csl_encode(const OrientedAngle& theta, const CslSpec& spec);

/// Center of the argmax bin; ties go to the lowest index.
OrientedAngle csl_decode(std::span<const double> scores, const CslSpec& spec);

}  // namespace fsc
