// fsc_lab: experiment runner for the Fourier series angle coder and its
// baselines. Every subcommand is deterministic for a fixed --seed.
//
// Exit codes: 0 all contracts hold, 1 a contract failed, 2 usage or I/O error.

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fsc/errors.hpp"
#include "fsc/experiments.hpp"

namespace ex = fsc::experiments;

namespace {

std::vector<fsc::CoderKind> parse_kinds(const std::string& list) {
  std::vector<fsc::CoderKind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(fsc::parse_coder_kind(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier series angle coder: round trips, sweeps, Monte Carlo noise studies and loss checks"};
  app.set_config("--config", "", "Flat key=value file with option values (keys are long option names)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  std::string coder = "fsc";
  std::string coders = "fsc,pscd";
  std::string constrained = "fsc";
  std::string format = "csv";
  ex::ExperimentConfig raw;
  double sigma = 0, modulus = 1, step = 0;
  std::uint64_t trials = 0;
  double angle_deg = 0;
  bool inject = false;

  app.add_option("--coder", coder, "fsc | psc | pscd | csl")->capture_default_str();
  app.add_option("--n-freq", raw.n_freq, "FSC harmonic count N")->capture_default_str();
  auto* sigma_opt = app.add_option("--sigma", sigma,
                                   "Gaussian component noise (default 0; montecarlo 0.05; errordist 0.3)");
  auto* modulus_opt = app.add_option("--modulus", modulus,
                                     "Modulus collapse factor m in (0,1] (default 1; errordist 0.3)");
  auto* trials_opt = app.add_option("--trials", trials,
                                    "Monte Carlo trials (default 100000) or losscheck random points (1000)");
  app.add_option("--seed", raw.seed, "Master seed for counter-based draws")->capture_default_str();
  auto* step_opt = app.add_option("--angle-step-deg", step, "Sweep step in degrees (default 0.01 roundtrip, 1 sweep)");
  auto* thr_opt = app.add_option("--threshold", raw.threshold, "PSC/PSCD heuristic modulus threshold (e.g. 0.47)");
  app.add_option("--out", raw.out_path, "Output file, '-' for stdout")->capture_default_str();
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--csl-bins", raw.csl_bins, "CSL bin count")->capture_default_str();
  auto* angle_opt = app.add_option("--angle-deg", angle_deg, "Fixed ground-truth angle; default is a 360-angle sweep");
  app.add_option("--m-start", raw.m_start, "Montecarlo modulus grid start")->capture_default_str();
  app.add_option("--m-stop", raw.m_stop, "Montecarlo modulus grid stop")->capture_default_str();
  app.add_option("--m-step", raw.m_step, "Montecarlo modulus grid step")->capture_default_str();
  app.add_option("--coders", coders, "Errordist coder list")->capture_default_str();
  app.add_option("--constrained", constrained,
                 "Errordist coders simulated with the manifold penalty (modulus held at 1); '' for none")
      ->capture_default_str();
  app.add_option("--hist-bin-deg", raw.hist_bin_deg, "Errordist histogram bin width")->capture_default_str();
  app.add_option("--workers", raw.workers, "Simulation threads (results do not depend on it)")
      ->capture_default_str();
  app.add_flag("--inject-wrong-gradient", inject, "Losscheck negative control")->group("");

  struct Entry {
    const char* name;
    ex::Subcommand cmd;
    const char* help;
  };
  const Entry entries[] = {
      {"roundtrip", ex::Subcommand::roundtrip, "Check decode(encode(theta)) over the whole range"},
      {"sweep", ex::Subcommand::sweep, "Per-angle decode table with optional noise"},
      {"montecarlo", ex::Subcommand::montecarlo, "Decoding variance against modulus collapse"},
      {"errordist", ex::Subcommand::errordist, "Error histogram and CDF at high noise"},
      {"losscheck", ex::Subcommand::losscheck, "Loss gradient and manifold-penalty checks"},
  };
  std::vector<std::pair<CLI::App*, ex::Subcommand>> subs;
  for (const auto& e : entries) subs.emplace_back(app.add_subcommand(e.name, e.help), e.cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ex::Subcommand cmd = ex::Subcommand::roundtrip;
    for (const auto& [sub, c] : subs) {
      if (sub->parsed()) cmd = c;
    }
    ex::ExperimentConfig config = ex::ExperimentConfig::defaults_for(cmd);
    config.coder = fsc::parse_coder_kind(coder);
    config.n_freq = raw.n_freq;
    config.seed = raw.seed;
    config.out_path = raw.out_path;
    config.format = format == "json" ? ex::OutputFormat::json : ex::OutputFormat::csv;
    config.csl_bins = raw.csl_bins;
    config.m_start = raw.m_start;
    config.m_stop = raw.m_stop;
    config.m_step = raw.m_step;
    config.coders = parse_kinds(coders);
    config.constrained = parse_kinds(constrained);
    config.hist_bin_deg = raw.hist_bin_deg;
    config.workers = raw.workers;
    config.inject_wrong_gradient = inject;
    if (thr_opt->count()) config.threshold = raw.threshold;
    if (sigma_opt->count()) config.sigma = sigma;
    if (modulus_opt->count()) config.modulus = modulus;
    if (trials_opt->count()) config.trials = trials;
    if (step_opt->count()) config.angle_step_deg = step;
    if (angle_opt->count()) config.angle_deg = angle_deg;

    const ex::RunOutcome outcome = ex::run(config);
    ex::write_report(outcome, config);
    for (const auto& m : outcome.messages) std::cerr << m << '\n';
    return outcome.exit_code;
  } catch (const fsc::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const ex::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 2;
  }
}
