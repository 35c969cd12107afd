#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fsc/counter_rng.hpp"
#include "fsc/errors.hpp"
#include "fsc/experiments.hpp"
#include "fsc/robustness.hpp"
#include "fsc/training_surface.hpp"

namespace fsc::experiments {

namespace {

constexpr double kRoundTripTolerance = 1e-9;
constexpr double kGradientTolerance = 1e-6;
constexpr double kKinkMargin = 1e-3;
constexpr double kBoundaryDelta = 1e-5;
constexpr double kBoundaryTolerance = 1e-3;
// cos^2 + sin^2 is 1 only to rounding, so the manifold term is ~1e-32 at truth.
constexpr double kZeroTolerance = 1e-12;

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

/// Grid of `ceil(range / step)` angles starting at the lower bound.
std::vector<double> angle_grid(const AngleDefinition& def, double step_deg) {
  if (!(step_deg > 0.0) || !std::isfinite(step_deg)) throw InvalidInput("angle step must be > 0");
  const double range_deg = rad_to_deg(def.period);
  const auto n = static_cast<std::size_t>(std::ceil(range_deg / step_deg - 1e-9));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = def.lower_bound + deg_to_rad(static_cast<double>(i) * step_deg);
  }
  return out;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double relative_gap(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double scale = std::max({norm2(a), norm2(b), 1e-12});
  return norm2(d) / scale;
}

bool contains(const std::vector<CoderKind>& kinds, CoderKind k) {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

}  // namespace

std::string to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::roundtrip: return "roundtrip";
    case Subcommand::sweep: return "sweep";
    case Subcommand::montecarlo: return "montecarlo";
    case Subcommand::errordist: return "errordist";
    case Subcommand::losscheck: return "losscheck";
  }
  return "unknown";
}

ExperimentConfig ExperimentConfig::defaults_for(Subcommand cmd) {
  ExperimentConfig c;
  c.subcommand = cmd;
  switch (cmd) {
    case Subcommand::roundtrip:
      c.angle_step_deg = 0.01;
      break;
    case Subcommand::sweep:
      c.angle_step_deg = 1.0;
      break;
    case Subcommand::montecarlo:
      c.sigma = 0.05;
      c.trials = 100000;
      break;
    case Subcommand::errordist:
      c.sigma = 0.3;
      c.modulus = 0.3;
      c.trials = 100000;
      break;
    case Subcommand::losscheck:
      c.trials = 1000;
      break;
  }
  return c;
}

AnyCoder make_coder(CoderKind kind, const ExperimentConfig& config) {
  switch (kind) {
    case CoderKind::fsc: return AnyCoder::fsc(config.n_freq);
    case CoderKind::psc: {
      PscSpec s;
      s.heuristic_threshold = config.threshold;
      return AnyCoder(s);
    }
    case CoderKind::pscd: return AnyCoder::pscd(config.threshold);
    case CoderKind::csl: return AnyCoder::csl(config.csl_bins);
  }
  throw InvalidInput("unknown coder");
}

RunOutcome run_roundtrip(const ExperimentConfig& config) {
  const AnyCoder coder = make_coder(config.coder, config);
  const AngleDefinition& def = coder.definition();
  const auto grid = angle_grid(def, config.angle_step_deg);

  // CSL is quantized: the contract is half a bin, not float exactness.
  double tolerance = kRoundTripTolerance;
  if (coder.kind() == CoderKind::csl) tolerance = def.period / (2.0 * config.csl_bins) + 1e-12;

  double max_err = 0.0, sum_err = 0.0, worst = grid.empty() ? 0.0 : grid[0];
  std::vector<std::pair<double, double>> branch_runs;
  bool in_run = false;
  std::string failure;
  for (double theta : grid) {
    const OrientedAngle truth(theta, def);
    double err = 0.0;
    bool corrected = false;
    try {
      const auto r = coder.decode(coder.encode(truth));
      err = angular_distance(r.theta_pred.value(), theta, def.period);
      corrected = r.branch_corrected;
    } catch (const DegenerateModulus& e) {
      err = def.period / 2;
      if (failure.empty()) failure = e.what();
    }
    sum_err += err;
    if (err > max_err) {
      max_err = err;
      worst = theta;
    }
    if (corrected && !in_run) branch_runs.emplace_back(theta, theta);
    if (corrected) branch_runs.back().second = theta;
    in_run = corrected;
  }

  std::ostringstream runs;
  for (std::size_t i = 0; i < branch_runs.size(); ++i) {
    runs << (i ? ";" : "") << format_number(rad_to_deg(branch_runs[i].first)) << ':'
         << format_number(rad_to_deg(branch_runs[i].second));
  }
  const bool passed = max_err < tolerance;

  RunOutcome out;
  out.table.columns = {"coder",          "n_freq",        "samples", "max_error_rad", "mean_error_rad",
                       "tolerance_rad", "worst_angle_deg", "branch_ranges_deg", "passed"};
  out.table.add_row({coder.name(), std::int64_t{config.n_freq}, as_int(grid.size()), max_err,
                     grid.empty() ? 0.0 : sum_err / static_cast<double>(grid.size()), tolerance,
                     rad_to_deg(worst), runs.str(), passed});
  out.exit_code = passed ? 0 : 1;
  if (!passed) {
    out.messages.push_back("round-trip contract violated at " + format_number(rad_to_deg(worst)) +
                           " deg: error " + format_number(max_err) + " rad" +
                           (failure.empty() ? "" : " (" + failure + ")"));
  }
  return out;
}

RunOutcome run_sweep(const ExperimentConfig& config) {
  const AnyCoder coder = make_coder(config.coder, config);
  const AngleDefinition& def = coder.definition();
  const NoiseModel model{config.sigma, config.modulus, config.seed};
  model.validate();
  const auto grid = angle_grid(def, config.angle_step_deg);

  RunOutcome out;
  out.table.columns = {"true_angle_deg", "decoded_angle_deg", "error_deg",
                       "branch_corrected", "modulus_f1",        "modulus_f2"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const OrientedAngle truth(grid[i], def);
    const auto noisy = perturb(coder.encode(truth), model, i);
    const auto moduli = coder.moduli(noisy);
    const Cell m1 = moduli.size() > 0 ? Cell{moduli[0]} : Cell{};
    const Cell m2 = moduli.size() > 1 ? Cell{moduli[1]} : Cell{};
    try {
      const auto r = coder.decode(noisy);
      const double err = wrapped_difference(r.theta_pred.value(), truth.value(), def.period);
      out.table.add_row({rad_to_deg(truth.value()), rad_to_deg(r.theta_pred.value()), rad_to_deg(err),
                         r.branch_corrected, m1, m2});
    } catch (const DegenerateModulus&) {
      out.table.add_row({rad_to_deg(truth.value()), Cell{}, Cell{}, false, m1, m2});
      out.messages.push_back("degenerate modulus at " + format_number(rad_to_deg(truth.value())) + " deg");
    }
  }
  return out;
}

RunOutcome run_montecarlo(const ExperimentConfig& config) {
  if (config.trials == 0) throw InvalidInput("trials must be >= 1");
  if (!(config.m_step > 0.0)) throw InvalidInput("modulus step must be > 0");
  if (!(config.m_stop > 0.0 && config.m_start <= 1.0 && config.m_stop <= config.m_start)) {
    throw InvalidInput("modulus grid must satisfy 0 < m_stop <= m_start <= 1");
  }
  const AnyCoder coder = make_coder(config.coder, config);
  const GroundTruth truth = config.angle_deg
                                ? GroundTruth{OrientedAngle(deg_to_rad(*config.angle_deg), coder.definition())}
                                : GroundTruth{UniformSweep{}};
  SimulationOptions opts;
  opts.workers = config.workers;

  RunOutcome out;
  out.table.columns = {"m", "empirical_variance", "theoretical_variance", "mae", "cycle_error_rate", "trials",
                       "seed"};
  // Every row reuses the same seed, so rows differ only in m.
  for (int i = 0;; ++i) {
    const double m = config.m_start - i * config.m_step;
    if (m < config.m_stop - 1e-9) break;
    const NoiseModel model{config.sigma, m, config.seed};
    const auto rep = monte_carlo_variance(coder, truth, model, config.trials, opts);
    const Cell theory = rep.theoretical_variance ? Cell{*rep.theoretical_variance} : Cell{};
    out.table.add_row({m, rep.variance_estimate, theory, rep.mae_decoded, rep.cycle_error_rate,
                       as_int(config.trials), as_int(config.seed)});
  }
  return out;
}

RunOutcome run_errordist(const ExperimentConfig& config) {
  if (config.trials == 0) throw InvalidInput("trials must be >= 1");
  if (!(config.hist_bin_deg > 0.0)) throw InvalidInput("histogram bin width must be > 0");
  const NoiseModel model{config.sigma, config.modulus, config.seed};
  static const std::vector<double> kCdfDeg{0.5, 1, 2, 5, 10, 15, 20, 30, 45, 60, 90};

  RunOutcome out;
  out.table.columns = {"coder", "kind", "x_deg", "value"};
  SimulationOptions opts;
  opts.workers = config.workers;

  for (const CoderKind kind : config.coders) {
    AnyCoder coder = make_coder(kind, config);
    coder.set_manifold_constrained(contains(config.constrained, kind));
    const double period_deg = rad_to_deg(coder.definition().period);
    opts.histogram_bins = std::max(1, static_cast<int>(std::lround(period_deg / config.hist_bin_deg)));
    const GroundTruth truth = config.angle_deg
                                  ? GroundTruth{OrientedAngle(deg_to_rad(*config.angle_deg), coder.definition())}
                                  : GroundTruth{UniformSweep{}};
    const auto rep = monte_carlo_variance(coder, truth, model, config.trials, opts);
    const std::string label = coder.name() + (coder.manifold_constrained() ? "+manifold" : "");

    for (const auto& bin : rep.histogram) {
      out.table.add_row({label, std::string("histogram"), rad_to_deg(bin.center), as_int(bin.count)});
    }
    std::vector<double> thresholds;
    for (double d : kCdfDeg) thresholds.push_back(deg_to_rad(d));
    for (const auto& p : error_cdf(rep.errors, thresholds)) {
      out.table.add_row({label, std::string("cdf"), rad_to_deg(p.threshold), p.fraction});
    }
    const double within_1 = error_cdf(rep.errors, std::vector<double>{deg_to_rad(1.0)})[0].fraction;
    out.table.add_row({label, std::string("within_1deg"), 1.0, within_1});
    out.table.add_row({label, std::string("cycle_error_rate"), rad_to_deg(rep.cycle_threshold),
                       rep.cycle_error_rate});
    out.table.add_row({label, std::string("mae_deg"), Cell{}, rad_to_deg(rep.mae_decoded)});
  }
  return out;
}

RunOutcome run_losscheck(const ExperimentConfig& config) {
  LossSpec spec;
  spec.spec.n_freq = config.n_freq;
  spec.validate();
  const CoderSpec& cs = spec.spec;
  const AngleDefinition& def = cs.definition;
  const auto channels = static_cast<std::size_t>(cs.channel_count());

  RunOutcome out;
  out.table.columns = {"check", "passed", "value", "detail"};
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok, double value, const std::string& detail) {
    out.table.add_row({name, ok, value, detail});
    if (!ok) {
      all_ok = false;
      out.messages.push_back(name + " failed: " + detail);
    }
  };

  // Zero at truth on a 1 degree grid.
  double worst_total = 0.0, worst_grad = 0.0;
  for (double theta : angle_grid(def, 1.0)) {
    const OrientedAngle gt(theta, def);
    const auto r = fsc_loss(encode(gt, cs).components, gt, spec);
    worst_total = std::max(worst_total, r.total);
    worst_grad = std::max(worst_grad, norm2(r.gradient));
  }
  record("zero_at_truth", worst_total < kZeroTolerance && worst_grad < kZeroTolerance, worst_total,
         "max |grad| " + format_number(worst_grad));

  // Analytic gradient vs central differences on random points away from the kinks.
  double worst_gap = 0.0;
  std::uint64_t worst_point = 0, tested = 0;
  for (std::uint64_t t = 0; tested < config.trials && t < 100 * (config.trials + 1); ++t) {
    std::vector<double> pred(channels);
    for (std::size_t i = 0; i < channels; ++i) pred[i] = 3.0 * keyed_uniform(config.seed, t, i) - 1.5;
    const OrientedAngle gt(def.lower_bound + def.period * keyed_uniform(config.seed, t, channels), def);
    const auto target = encode(gt, cs).components;
    bool near_kink = false;
    for (std::size_t i = 0; i < channels; ++i) {
      near_kink |= std::abs(std::abs(pred[i] - target[i]) - spec.beta) < kKinkMargin;
    }
    for (int k = 1; k <= cs.n_freq; ++k) {
      const double q = pred[cs.cos_index(k)] * pred[cs.cos_index(k)] + pred[cs.sin_index(k)] * pred[cs.sin_index(k)];
      near_kink |= std::abs(std::abs(q - 1.0) - spec.beta) < kKinkMargin;
    }
    if (near_kink) continue;
    ++tested;
    auto analytic = fsc_loss(pred, gt, spec).gradient;
    if (config.inject_wrong_gradient) {
      for (double& g : analytic) g += 1e-3;
    }
    const auto numeric =
        finite_diff_grad([&](std::span<const double> p) { return fsc_loss(p, gt, spec).total; }, pred);
    const double gap = relative_gap(analytic, numeric);
    if (gap > worst_gap) {
      worst_gap = gap;
      worst_point = t;
    }
  }
  record("gradient_finite_difference", worst_gap < kGradientTolerance && tested == config.trials, worst_gap,
         std::to_string(tested) + " points, worst at seed " + std::to_string(config.seed) + " index " +
             std::to_string(worst_point));

  // d manifold / d lambda < 0 for pred = lambda * encode(theta), 0 < lambda < 1.
  double worst_slope = -std::numeric_limits<double>::infinity();
  for (double theta : angle_grid(def, 1.0)) {
    const OrientedAngle gt(theta, def);
    const auto e = encode(gt, cs).components;
    for (int j = 1; j <= 19; ++j) {
      const double lambda = 0.05 * j;
      std::vector<double> pred(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) pred[i] = lambda * e[i];
      const auto r = fsc_loss(pred, gt, spec);
      double slope = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i) slope += r.manifold_gradient[i] * e[i];
      worst_slope = std::max(worst_slope, slope);
    }
  }
  record("manifold_pull", worst_slope < 0.0, worst_slope, "max d(manifold)/d(lambda) over lambda in (0,1)");

  // Loss continuity across the range boundary.
  std::vector<double> probe(channels);
  for (std::size_t i = 0; i < channels; ++i) probe[i] = 2.0 * keyed_uniform(config.seed + 1, 0, i) - 1.0;
  const double lo = fsc_loss(probe, OrientedAngle(def.lower_bound + kBoundaryDelta, def), spec).total;
  const double hi = fsc_loss(probe, OrientedAngle(def.upper_bound() - kBoundaryDelta, def), spec).total;
  record("boundary_continuity", std::abs(lo - hi) < kBoundaryTolerance, std::abs(lo - hi),
         "delta " + format_number(kBoundaryDelta) + " rad");

  out.exit_code = all_ok ? 0 : 1;
  return out;
}

RunOutcome run(const ExperimentConfig& config) {
  switch (config.subcommand) {
    case Subcommand::roundtrip: return run_roundtrip(config);
    case Subcommand::sweep: return run_sweep(config);
    case Subcommand::montecarlo: return run_montecarlo(config);
    case Subcommand::errordist: return run_errordist(config);
    case Subcommand::losscheck: return run_losscheck(config);
  }
  throw InvalidInput("unknown subcommand");
}

}  // namespace fsc::experiments
