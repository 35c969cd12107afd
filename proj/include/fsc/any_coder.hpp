#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fsc/baseline_coders.hpp"
#include "fsc/fourier_coder.hpp"

namespace fsc {

enum class CoderKind { fsc, psc, pscd, csl };

std::string to_string(CoderKind kind);
/// Parses "fsc", "psc", "pscd" or "csl"; throws InvalidInput otherwise.
CoderKind parse_coder_kind(const std::string& name);

/// Type-erased coder used by the simulation and experiment code.
class AnyCoder {
 public:
  using Spec = std::variant<CoderSpec, PscSpec, CslSpec>;

  explicit AnyCoder(Spec spec);

  static AnyCoder fsc(int n_freq = 2);
  static AnyCoder psc();
  static AnyCoder pscd(std::optional<double> heuristic_threshold = std::nullopt);
  static AnyCoder csl(int n_bins = 45);

  CoderKind kind() const;
  std::string name() const;
  const Spec& spec() const { return spec_; }
  const AngleDefinition& definition() const;
  int channel_count() const;

  std::vector<double> encode(const OrientedAngle& theta) const;
  DecodeResult decode(std::span<const double> raw) const;

  /// Normalized modulus of harmonic 1 and (when present) harmonic 2; a clean
  /// encoding gives 1. CSL has no modulus and returns an empty vector.
  std::vector<double> moduli(std::span<const double> raw) const;

  /// Marks the coder as trained with the unit-circle manifold penalty. Such a
  /// coder keeps its component modulus, so simulated modulus collapse is not
  /// applied to it.
  AnyCoder& set_manifold_constrained(bool on) {
    manifold_constrained_ = on;
    return *this;
  }
  bool manifold_constrained() const { return manifold_constrained_; }

 private:
  Spec spec_;
  bool manifold_constrained_ = false;
};

}  // namespace fsc
