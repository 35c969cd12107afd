#include "fsc/baseline_coders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fsc/errors.hpp"

namespace fsc {

void PscSpec::validate() const {
  if (omega < 1) throw InvalidInput("omega must be >= 1");
  if (heuristic_threshold && !(*heuristic_threshold >= 0.0)) {
    throw InvalidInput("heuristic threshold must be >= 0");
  }
}

void CslSpec::validate() const {
  if (n_bins < 2) throw InvalidInput("CSL needs at least 2 bins");
  if (window_radius < 0 || 2 * window_radius >= n_bins) {
    throw InvalidInput("CSL window radius must be in [0, n_bins/2)");
  }
}

double Synthesis::modulus() const { return std::hypot(c, s); }

std::array<double, 3> psc_phases(int harmonic) {
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = harmonic * PscSpec::kPhases[k];
  return out;
}

std::vector<double> psc_encode(const OrientedAngle& theta, const PscSpec& spec) {
  spec.validate();
  const double gamma = to_expanded(theta, spec.omega);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(spec.channel_count()));
  for (double a : PscSpec::kPhases) out.push_back(std::cos(gamma + a));
  if (spec.dual_frequency) {
    for (double a : PscSpec::kPhases) out.push_back(std::cos(2 * gamma + 2 * a));
  }
  return out;
}

Synthesis psc_synthesize(std::span<const double> p, std::span<const double> alpha) {
  if (p.size() != 3 || alpha.size() != 3) {
    throw InvalidInput("phase synthesis needs exactly 3 channels and 3 phases");
  }
  Synthesis out;
  for (size_t k = 0; k < 3; ++k) {
    out.c += p[k] * std::cos(alpha[k]);
    out.s -= p[k] * std::sin(alpha[k]);
  }
  return out;
}

namespace {

double phase_of(const Synthesis& syn) {
  if (syn.c == 0.0 && syn.s == 0.0) {
    throw DegenerateModulus("zero synthesized modulus: phase is undefined");
  }
  return std::atan2(syn.s, syn.c);
}

}  // namespace

DecodeResult psc_decode(std::span<const double> raw, const PscSpec& spec) {
  spec.validate();
  if (static_cast<int>(raw.size()) != spec.channel_count()) {
    throw InvalidInput("expected " + std::to_string(spec.channel_count()) +
                       " PSC channels, got " + std::to_string(raw.size()));
  }
  const auto a1 = psc_phases(1);
  const Synthesis first = psc_synthesize(raw.subspan(0, 3), a1);

  // Heuristic override, checked on the fundamental as in the reference
  // detector code.
  if (spec.heuristic_threshold &&
      first.modulus() / PscSpec::kCleanModulus < *spec.heuristic_threshold) {
    DecodeResult r{wrap_to_range(0.0, spec.definition), {}, false};
    r.heuristic_fired = true;
    return r;
  }

  const double omega = spec.omega;
  if (!spec.dual_frequency) {
    const double phase = phase_of(first);
    return DecodeResult{wrap_to_range(phase / omega, spec.definition), {phase}, false};
  }

  const auto a2 = psc_phases(2);
  const Synthesis second = psc_synthesize(raw.subspan(3, 3), a2);
  const double fine = 0.5 * phase_of(second);
  const double coarse = std::atan2(first.s, first.c);
  bool corrected = false;
  const double gamma = cyclic_wrap(coarse, fine, corrected);
  return DecodeResult{wrap_to_range(gamma / omega, spec.definition), {coarse, fine}, corrected};
}

int csl_bin(const OrientedAngle& theta, const CslSpec& spec) {
  spec.validate();
  const double offset = theta.value() - spec.definition.lower_bound;
  const int i = static_cast<int>(std::floor(offset / spec.bin_width()));
  return std::clamp(i, 0, spec.n_bins - 1);
}

std::vector<double> csl_encode(const OrientedAngle& theta, const CslSpec& spec) {
  const int center = csl_bin(theta, spec);
  const double sigma = spec.window_radius / 3.0;
  std::vector<double> out(static_cast<size_t>(spec.n_bins), 0.0);
  out[center] = 1.0;
  if (spec.window_radius == 0) return out;
  for (int i = 0; i < spec.n_bins; ++i) {
    const int raw = std::abs(i - center);
    const int d = std::min(raw, spec.n_bins - raw);
    if (d == 0 || d > spec.window_radius) continue;
    out[i] = std::exp(-static_cast<double>(d * d) / (2 * sigma * sigma));
  }
  return out;
}

OrientedAngle csl_decode(std::span<const double> scores, const CslSpec& spec) {
  spec.validate();
  if (static_cast<int>(scores.size()) != spec.n_bins) {
    throw InvalidInput("expected " + std::to_string(spec.n_bins) + " CSL scores, got " +
                       std::to_string(scores.size()));
  }
  if (std::any_of(scores.begin(), scores.end(), [](double v) { return std::isnan(v); })) {
    throw InvalidInput("CSL scores contain NaN");
  }
  // max_element returns the first maximum, which is the tie rule.
  const auto best = std::max_element(scores.begin(), scores.end());
  const auto i = static_cast<double>(std::distance(scores.begin(), best));
  return wrap_to_range(spec.definition.lower_bound + (i + 0.5) * spec.bin_width(),
                       spec.definition);
}

}  // namespace fsc
