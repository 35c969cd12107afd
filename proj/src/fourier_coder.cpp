#include "fsc/fourier_coder.hpp"

#include <cmath>
#include <string>

#include "fsc/errors.hpp"

namespace fsc {

void CoderSpec::validate() const {
  if (n_freq < 1) throw InvalidInput("n_freq must be >= 1");
  if (omega < 1) throw InvalidInput("omega must be >= 1");
  if (!(modulus_floor >= 0.0)) throw InvalidInput("modulus floor must be >= 0");
  if (!(definition.period > 0.0)) throw InvalidInput("angle period must be positive");
}

double dc_target(const CoderSpec& /*spec*/) { return 0.0; }

EncodedAngle encode(const OrientedAngle& theta, const CoderSpec& spec) {
  spec.validate();
  EncodedAngle out{std::vector<double>(static_cast<size_t>(spec.channel_count())), spec};
  if (spec.include_dc) out.components[0] = dc_target(spec);
  const double gamma = to_expanded(theta, spec.omega);
  for (int k = 1; k <= spec.n_freq; ++k) {
    out.components[spec.cos_index(k)] = std::cos(k * gamma);
    out.components[spec.sin_index(k)] = std::sin(k * gamma);
  }
  return out;
}

double decode_single(double c, double s, int k, int omega) {
  if (k < 1 || omega < 1) throw InvalidInput("harmonic order and omega must be >= 1");
  if (c == 0.0 && s == 0.0) {
    throw DegenerateModulus("zero modulus: phase is undefined");
  }
  return std::atan2(s, c) / static_cast<double>(k * omega);
}

double cyclic_wrap(double coarse_phase, double fine_half_phase, bool& corrected) {
  corrected = std::cos(coarse_phase - fine_half_phase) < 0.0;
  if (corrected) {
    double m = std::fmod(fine_half_phase, 2 * kPi);
    if (m < 0.0) m += 2 * kPi;
    return m - kPi;
  }
  return fine_half_phase;
}

namespace {

void check_length(std::span<const double> raw, const CoderSpec& spec) {
  if (static_cast<int>(raw.size()) != spec.channel_count()) {
    throw InvalidInput("expected " + std::to_string(spec.channel_count()) +
                       " channels, got " + std::to_string(raw.size()));
  }
}

double modulus(std::span<const double> raw, const CoderSpec& spec, int k) {
  return std::hypot(raw[spec.cos_index(k)], raw[spec.sin_index(k)]);
}

void require_modulus(std::span<const double> raw, const CoderSpec& spec, int k) {
  const double m = modulus(raw, spec, k);
  if (!(m > spec.modulus_floor)) {
    throw DegenerateModulus("modulus of harmonic " + std::to_string(k) + " is below the floor");
  }
}

}  // namespace

DecodeResult decode(std::span<const double> raw, const CoderSpec& spec) {
  spec.validate();
  check_length(raw, spec);
  const double omega = spec.omega;

  if (spec.n_freq == 1) {
    require_modulus(raw, spec, 1);
    const double phase = std::atan2(raw[spec.sin_index(1)], raw[spec.cos_index(1)]);
    return DecodeResult{wrap_to_range(phase / omega, spec.definition), {phase}, false};
  }

  // The coarse harmonic only picks the branch; the estimate itself comes
  // from harmonic 2.
  require_modulus(raw, spec, 2);
  const double coarse = std::atan2(raw[spec.sin_index(1)], raw[spec.cos_index(1)]);
  const double fine = 0.5 * std::atan2(raw[spec.sin_index(2)], raw[spec.cos_index(2)]);
  bool corrected = false;
  const double gamma = cyclic_wrap(coarse, fine, corrected);
  return DecodeResult{wrap_to_range(gamma / omega, spec.definition), {coarse, fine}, corrected};
}

std::vector<double> per_frequency_modulus(std::span<const double> raw, const CoderSpec& spec) {
  spec.validate();
  check_length(raw, spec);
  std::vector<double> out(static_cast<size_t>(spec.n_freq));
  for (int k = 1; k <= spec.n_freq; ++k) out[k - 1] = modulus(raw, spec, k);
  return out;
}

}  // namespace fsc
