#pragma once

#include <span>
#include <vector>

#include "fsc/angle.hpp"

namespace fsc {

/// Layout and parameters of a Fourier series angle encoding.
///
/// Channels are ordered [a0, cos g, sin g, cos 2g, sin 2g, ..., cos Ng, sin Ng]
/// where g = omega * theta. Without the DC channel the leading a0 is dropped.
struct CoderSpec {
  int n_freq = 2;
  int omega = 2;
  AngleDefinition definition = AngleDefinition::le90();
  bool include_dc = true;
  /// Decode refuses Cartesian pairs whose modulus is below this value.
  double modulus_floor = 1e-12;

  /// Throws InvalidInput when n_freq < 1, omega < 1 or the floor is negative.
  void validate() const;

  int channel_count() const { return 2 * n_freq + (include_dc ? 1 : 0); }
  int dc_offset() const { return include_dc ? 1 : 0; }
  /// Channel holding cos(k g), k in [1, n_freq].
  int cos_index(int k) const { return dc_offset() + 2 * (k - 1); }
  int sin_index(int k) const { return cos_index(k) + 1; }
};

struct EncodedAngle {
  std::vector<double> components;
  CoderSpec spec;
};

struct DecodeResult {
  OrientedAngle theta_pred;
  /// Per-frequency phase estimates: the coarse gamma-domain phase first,
  /// then (dual frequency only) half the second-harmonic phase.
  std::vector<double> gamma_estimates;
  /// True when cyclic wrapping moved the fine estimate by half a period.
  bool branch_corrected = false;
  /// Only set by baseline decoders with a modulus threshold.
  bool heuristic_fired = false;
};

/// Ground-truth value of the DC channel. The mean of unit-amplitude
/// harmonics over one period is zero.
double dc_target(const CoderSpec& spec);

EncodedAngle encode(const OrientedAngle& theta, const CoderSpec& spec);

/// arctan2(s, c) / (k * omega). Throws DegenerateModulus when (c, s) = (0, 0).
double decode_single(double c, double s, int k, int omega);

/// Cyclic wrapping between a coarse phase in (-pi, pi] and the half-period
/// fine estimate in (-pi/2, pi/2]. Returns the gamma-domain angle and sets
/// `corrected` when the fine estimate had to be moved by pi.
double cyclic_wrap(double coarse_phase, double fine_half_phase, bool& corrected);

/// Decodes raw components. Only harmonics 1 and 2 take part; the DC
/// channel and harmonics >= 3 are supervision-only.
DecodeResult decode(std::span<const double> raw, const CoderSpec& spec);

std::vector<double> per_frequency_modulus(std::span<const double> raw, const CoderSpec& spec);

}  // namespace fsc
