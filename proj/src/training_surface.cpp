#include "fsc/training_surface.hpp"

#include <cmath>
#include <string>

#include "fsc/errors.hpp"

namespace fsc {

void LossSpec::validate() const {
  if (!(beta > 0.0)) throw InvalidInput("smooth-L1 beta must be > 0");
  if (!(manifold_weight >= 0.0)) throw InvalidInput("manifold weight must be >= 0");
  spec.validate();
}

std::vector<double> normalize_logits(std::span<const double> raw) {
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) throw InvalidInput("logits must be finite");
    out[i] = std::tanh(0.5 * raw[i]);
  }
  return out;
}

double smooth_l1(double x, double target, double beta) {
  if (!(beta > 0.0)) throw InvalidInput("smooth-L1 beta must be > 0");
  const double d = std::abs(x - target);
  return d < beta ? 0.5 * d * d / beta : d - 0.5 * beta;
}

double smooth_l1_grad(double x, double target, double beta) {
  if (!(beta > 0.0)) throw InvalidInput("smooth-L1 beta must be > 0");
  const double diff = x - target;
  if (std::abs(diff) <= beta) return diff / beta;
  return diff > 0.0 ? 1.0 : -1.0;
}

LossResult fsc_loss(std::span<const double> pred, const OrientedAngle& gt_angle, const LossSpec& spec,
                    double num_positive) {
  spec.validate();
  if (!(num_positive > 0.0)) throw InvalidInput("positive-sample count must be > 0");
  const CoderSpec& cs = spec.spec;
  if (static_cast<int>(pred.size()) != cs.channel_count()) {
    throw InvalidInput("expected " + std::to_string(cs.channel_count()) + " channels, got " +
                       std::to_string(pred.size()));
  }
  const auto target = encode(gt_angle, cs).components;

  LossResult r;
  r.gradient.assign(pred.size(), 0.0);
  r.manifold_gradient.assign(pred.size(), 0.0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    r.fit_term += smooth_l1(pred[i], target[i], spec.beta);
    r.gradient[i] = smooth_l1_grad(pred[i], target[i], spec.beta);
  }
  for (int k = 1; k <= cs.n_freq; ++k) {
    const double c = pred[cs.cos_index(k)];
    const double s = pred[cs.sin_index(k)];
    const double q = c * c + s * s;
    r.manifold_term += smooth_l1(q, 1.0, spec.beta);
    const double dq = smooth_l1_grad(q, 1.0, spec.beta);
    r.manifold_gradient[cs.cos_index(k)] = 2.0 * c * dq;
    r.manifold_gradient[cs.sin_index(k)] = 2.0 * s * dq;
  }

  const double inv = 1.0 / num_positive;
  r.fit_term *= inv;
  r.manifold_term *= inv;
  r.total = r.fit_term + spec.manifold_weight * r.manifold_term;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    r.manifold_gradient[i] *= inv;
    r.gradient[i] = r.gradient[i] * inv + spec.manifold_weight * r.manifold_gradient[i];
  }
  return r;
}

std::vector<double> finite_diff_grad(const ScalarField& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be > 0");
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = probe[i];
    probe[i] = xi + h;
    const double up = f(probe);
    probe[i] = xi - h;
    const double down = f(probe);
    probe[i] = xi;
    out[i] = (up - down) / (2.0 * h);
  }
  return out;
}

}  // namespace fsc
