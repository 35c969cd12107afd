#include "fsc/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fsc/counter_rng.hpp"
#include "fsc/errors.hpp"

namespace fsc {

void NoiseModel::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidInput("sigma must be >= 0");
  if (!(modulus_scale > 0.0 && modulus_scale <= 1.0)) {
    throw InvalidInput("modulus scale must be in (0, 1]");
  }
}

std::vector<double> perturb(std::span<const double> clean, const NoiseModel& model,
                            std::uint64_t trial_index) {
  model.validate();
  std::vector<double> out(clean.size());
  for (size_t i = 0; i < clean.size(); ++i) {
    out[i] = model.modulus_scale * clean[i];
    if (model.sigma > 0.0) out[i] += model.sigma * keyed_gaussian(model.rng_seed, trial_index, i);
  }
  return out;
}

double taylor_error(double s, double c, double eps_s, double eps_c) {
  if (std::abs(c * c + s * s - 1.0) > 1e-9) {
    throw InvalidInput("linearization requires c^2 + s^2 = 1");
  }
  return eps_s * c - eps_c * s;
}

double theoretical_variance(VarianceLaw law, double sigma) {
  if (!(sigma >= 0.0)) throw InvalidInput("sigma must be >= 0");
  switch (law) {
    case VarianceLaw::fsc_dual: return sigma * sigma / 16.0;
    case VarianceLaw::psc_dual: return sigma * sigma / 24.0;
  }
  return 0.0;
}

std::optional<VarianceLaw> variance_law_for(const AnyCoder& coder) {
  switch (coder.kind()) {
    case CoderKind::fsc:
      if (std::get<CoderSpec>(coder.spec()).n_freq >= 2) return VarianceLaw::fsc_dual;
      return std::nullopt;
    case CoderKind::pscd: return VarianceLaw::psc_dual;
    default: return std::nullopt;
  }
}

namespace {

struct TrialOutcome {
  double error = 0.0;
  bool degenerate = false;
  bool heuristic = false;
};

class TruthSchedule {
 public:
  TruthSchedule(const GroundTruth& truth, const AngleDefinition& def, std::uint64_t trials)
      : def_(def) {
    if (const auto* fixed = std::get_if<OrientedAngle>(&truth)) {
      angles_.push_back(fixed->value());
      base_ = trials;
      return;
    }
    const auto& sweep = std::get<UniformSweep>(truth);
    if (sweep.n_angles < 1) throw InvalidInput("uniform sweep needs at least one angle");
    const auto n = static_cast<std::uint64_t>(sweep.n_angles);
    for (std::uint64_t j = 0; j < n; ++j) {
      angles_.push_back(def.lower_bound + def.period * static_cast<double>(j) / static_cast<double>(n));
    }
    base_ = trials / n;
    rem_ = trials % n;
  }

  double angle_for(std::uint64_t trial) const {
    if (angles_.size() == 1) return angles_[0];
    const std::uint64_t big = base_ + 1;
    std::uint64_t j = 0;
    if (trial < rem_ * big) {
      j = trial / big;
    } else {
      j = rem_ + (trial - rem_ * big) / std::max<std::uint64_t>(base_, 1);
    }
    return angles_[std::min<std::uint64_t>(j, angles_.size() - 1)];
  }

 private:
  AngleDefinition def_;
  std::vector<double> angles_;
  std::uint64_t base_ = 0;
  std::uint64_t rem_ = 0;
};

TrialOutcome run_trial(const AnyCoder& coder, const std::vector<double>& clean, double truth,
                       const NoiseModel& model, std::uint64_t trial) {
  const double period = coder.definition().period;
  const auto noisy = perturb(clean, model, trial);
  try {
    const DecodeResult r = coder.decode(noisy);
    return {wrapped_difference(r.theta_pred.value(), truth, period), false, r.heuristic_fired};
  } catch (const DegenerateModulus&) {
    return {period / 2, true, false};
  }
}

}  // namespace

SimulationReport monte_carlo_variance(const AnyCoder& coder, const GroundTruth& truth,
                                      const NoiseModel& model, std::uint64_t trials,
                                      const SimulationOptions& options) {
  model.validate();
  if (trials < 1) throw InvalidInput("trials must be >= 1");
  if (!(options.cycle_threshold > 0.0)) throw InvalidInput("cycle threshold must be > 0");
  if (options.histogram_bins < 1) throw InvalidInput("histogram needs at least one bin");

  NoiseModel effective = model;
  if (coder.manifold_constrained()) effective.modulus_scale = 1.0;

  const AngleDefinition& def = coder.definition();
  const TruthSchedule schedule(truth, def, trials);

  std::vector<TrialOutcome> outcomes(trials);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    double cached_angle = 0.0;
    std::vector<double> clean;
    for (std::uint64_t t = begin; t < end; ++t) {
      const double angle = schedule.angle_for(t);
      if (clean.empty() || angle != cached_angle) {
        clean = coder.encode(OrientedAngle(angle, def));
        cached_angle = angle;
      }
      outcomes[t] = run_trial(coder, clean, angle, effective, t);
    }
  };

  const std::uint64_t workers =
      std::clamp<std::uint64_t>(options.workers, 1, std::max<std::uint64_t>(trials, 1));
  if (workers == 1) {
    work(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  // Sequential reduction in trial order keeps the report bit-identical for
  // any worker count.
  SimulationReport report;
  report.trials = trials;
  report.cycle_threshold = options.cycle_threshold;
  report.errors.reserve(trials);
  double sum = 0.0, sum_abs = 0.0, sum_in = 0.0;
  std::uint64_t n_in = 0;
  for (const auto& o : outcomes) {
    report.errors.push_back(o.error);
    sum += o.error;
    sum_abs += std::abs(o.error);
    if (o.degenerate) ++report.degenerate_count;
    if (o.heuristic) ++report.heuristic_count;
    if (std::abs(o.error) > options.cycle_threshold) {
      ++report.cycle_errors;
    } else {
      sum_in += o.error;
      ++n_in;
    }
  }
  const double n = static_cast<double>(trials);
  report.mean_error = sum / n;
  report.mae_decoded = sum_abs / n;
  report.cycle_error_rate = static_cast<double>(report.cycle_errors) / n;

  const double mean_in = n_in > 0 ? sum_in / static_cast<double>(n_in) : 0.0;
  double ss_all = 0.0, ss_in = 0.0;
  for (double e : report.errors) {
    ss_all += (e - report.mean_error) * (e - report.mean_error);
    if (std::abs(e) <= options.cycle_threshold) ss_in += (e - mean_in) * (e - mean_in);
  }
  report.variance_all = trials > 1 ? ss_all / (n - 1) : 0.0;
  report.variance_estimate = n_in > 1 ? ss_in / static_cast<double>(n_in - 1) : 0.0;

  report.histogram = error_histogram(report.errors, options.histogram_bins, def.period);
  if (const auto law = variance_law_for(coder); law && effective.modulus_scale == 1.0) {
    report.theoretical_variance = theoretical_variance(*law, model.sigma);
  }
  return report;
}

double cycle_error_rate(std::span<const double> errors, double threshold) {
  if (!(threshold > 0.0)) throw InvalidInput("cycle threshold must be > 0");
  if (errors.empty()) return 0.0;
  const auto n = std::count_if(errors.begin(), errors.end(),
                               [&](double e) { return std::abs(e) > threshold; });
  return static_cast<double>(n) / static_cast<double>(errors.size());
}

double mae_components(std::span<const std::vector<double>> pred,
                      std::span<const std::vector<double>> gt) {
  if (pred.size() != gt.size()) throw InvalidInput("prediction and target counts differ");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i].size() != gt[i].size()) throw InvalidInput("channel counts differ");
    for (std::size_t j = 0; j < pred[i].size(); ++j) sum += std::abs(pred[i][j] - gt[i][j]);
    count += pred[i].size();
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

double mae_decoded(std::span<const double> pred, std::span<const double> gt, double period) {
  if (pred.size() != gt.size()) throw InvalidInput("prediction and target counts differ");
  if (pred.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += angular_distance(pred[i], gt[i], period);
  return sum / static_cast<double>(pred.size());
}

std::vector<CdfPoint> error_cdf(std::span<const double> errors, std::span<const double> thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw InvalidInput("CDF thresholds must be sorted ascending");
  }
  std::vector<double> mags(errors.size());
  std::transform(errors.begin(), errors.end(), mags.begin(), [](double e) { return std::abs(e); });
  std::sort(mags.begin(), mags.end());
  std::vector<CdfPoint> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto below = std::upper_bound(mags.begin(), mags.end(), t) - mags.begin();
    const double frac = mags.empty() ? 0.0 : static_cast<double>(below) / static_cast<double>(mags.size());
    out.push_back({t, frac});
  }
  return out;
}

std::vector<HistogramBin> error_histogram(std::span<const double> errors, int n_bins, double period) {
  if (n_bins < 1) throw InvalidInput("histogram needs at least one bin");
  if (!(period > 0.0)) throw InvalidInput("period must be positive");
  const double width = period / n_bins;
  std::vector<HistogramBin> bins(static_cast<std::size_t>(n_bins));
  for (int k = 0; k < n_bins; ++k) bins[k].center = -period / 2 + k * width;
  for (double e : errors) {
    const double w = wrapped_difference(e, 0.0, period);
    auto k = static_cast<long long>(std::floor((w + period / 2) / width + 0.5));
    k %= n_bins;
    if (k < 0) k += n_bins;
    ++bins[static_cast<std::size_t>(k)].count;
  }
  return bins;
}

MetricsReport compute_metrics(std::span<const std::vector<double>> pred_components,
                              std::span<const std::vector<double>> gt_components,
                              std::span<const double> pred_angles, std::span<const double> gt_angles,
                              double period, std::span<const double> cdf_thresholds) {
  MetricsReport r;
  r.mae_c = mae_components(pred_components, gt_components);
  r.mae_d = mae_decoded(pred_angles, gt_angles, period);
  std::vector<double> errs(pred_angles.size());
  for (std::size_t i = 0; i < errs.size(); ++i) {
    errs[i] = angular_distance(pred_angles[i], gt_angles[i], period);
  }
  r.cdf_points = error_cdf(errs, cdf_thresholds);
  return r;
}

}  // namespace fsc
