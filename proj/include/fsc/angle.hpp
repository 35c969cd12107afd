#pragma once

#include <numbers>
#include <string>

namespace fsc {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Half-open angular range [lower_bound, lower_bound + period).
struct AngleDefinition {
  double lower_bound = -kPi / 2;
  double period = kPi;
  std::string name = "le90";

  /// Long-edge definition used by rotated detectors: [-pi/2, pi/2), period pi.
  static AngleDefinition le90() { return {}; }

  double upper_bound() const { return lower_bound + period; }
  bool contains(double v) const { return v >= lower_bound && v < upper_bound(); }
};

/// An angle that is guaranteed to lie inside its definition's range.
class OrientedAngle {
 public:
  /// Wraps `value` into the range of `def`. Throws InvalidInput on a
  /// non-finite value or a non-positive period.
  OrientedAngle(double value, AngleDefinition def);

  double value() const { return value_; }
  const AngleDefinition& definition() const { return def_; }

 private:
  double value_;
  AngleDefinition def_;
};

OrientedAngle wrap_to_range(double value, const AngleDefinition& def);

/// Shortest distance between two angles on a circle of circumference
/// `period`; always in [0, period/2].
double angular_distance(double a, double b, double period);

/// Signed difference `a - b` reduced to (-period/2, period/2].
double wrapped_difference(double a, double b, double period);

/// gamma = omega * theta.
double to_expanded(const OrientedAngle& theta, int omega);

OrientedAngle from_expanded(double gamma, int omega, const AngleDefinition& def);

}  // namespace fsc
