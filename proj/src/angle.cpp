#include "fsc/angle.hpp"

#include <cmath>

#include "fsc/errors.hpp"

namespace fsc {

namespace {

void check_period(double period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidInput("angle period must be positive and finite");
  }
}

// Floored remainder into [lo, lo + period). The final guard handles values
// that round up onto the excluded upper endpoint.
double wrap_value(double value, double lo, double period) {
  double r = value - lo;
  r -= period * std::floor(r / period);
  if (r >= period) r -= period;
  if (r < 0.0) r = 0.0;
  return lo + r;
}

}  // namespace

OrientedAngle::OrientedAngle(double value, AngleDefinition def) : def_(std::move(def)) {
  check_period(def_.period);
  if (!std::isfinite(value)) {
    throw InvalidInput("angle value must be finite");
  }
  value_ = wrap_value(value, def_.lower_bound, def_.period);
  // lo + r can still land on the upper endpoint after rounding.
  if (value_ >= def_.upper_bound()) value_ = def_.lower_bound;
}

OrientedAngle wrap_to_range(double value, const AngleDefinition& def) {
  return OrientedAngle(value, def);
}

double wrapped_difference(double a, double b, double period) {
  check_period(period);
  double d = std::fmod(a - b, period);
  if (d > period / 2) {
    d -= period;
  } else if (d <= -period / 2) {
    d += period;
  }
  return d;
}

double angular_distance(double a, double b, double period) {
  return std::abs(wrapped_difference(a, b, period));
}

double to_expanded(const OrientedAngle& theta, int omega) {
  return static_cast<double>(omega) * theta.value();
}

OrientedAngle from_expanded(double gamma, int omega, const AngleDefinition& def) {
  if (omega < 1) throw InvalidInput("cycle factor must be >= 1");
  return wrap_to_range(gamma / static_cast<double>(omega), def);
}

}  // namespace fsc
