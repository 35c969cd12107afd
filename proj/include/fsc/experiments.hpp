#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fsc/any_coder.hpp"

namespace fsc::experiments {

inline constexpr int kSchemaVersion = 1;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Empty cells (monostate) render as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Index of `column`; throws std::out_of_range when missing.
  std::size_t column_index(const std::string& column) const;
};

/// 12 significant digits, "%.12g".
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& table);

enum class Subcommand { roundtrip, sweep, montecarlo, errordist, losscheck };
enum class OutputFormat { csv, json };

std::string to_string(Subcommand cmd);

struct ExperimentConfig {
  Subcommand subcommand = Subcommand::roundtrip;
  CoderKind coder = CoderKind::fsc;
  int n_freq = 2;
  double sigma = 0.0;
  double modulus = 1.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double angle_step_deg = 0.01;
  /// PSC/PSCD heuristic modulus threshold.
  std::optional<double> threshold;
  std::string out_path = "-";
  OutputFormat format = OutputFormat::csv;

  int csl_bins = 45;
  /// Fixed ground-truth angle; the uniform sweep is used when absent.
  std::optional<double> angle_deg;
  double m_start = 1.0;
  double m_stop = 0.1;
  double m_step = 0.05;
  std::vector<CoderKind> coders{CoderKind::fsc, CoderKind::pscd};
  /// Coders simulated as trained with the manifold penalty.
  std::vector<CoderKind> constrained{CoderKind::fsc};
  double hist_bin_deg = 1.0;
  unsigned workers = 1;
  /// Negative control for losscheck: corrupts the analytic gradient.
  bool inject_wrong_gradient = false;

  /// Per-subcommand defaults (trials, sigma, step, modulus).
  static ExperimentConfig defaults_for(Subcommand cmd);
};

struct RunOutcome {
  int exit_code = 0;
  Table table;
  /// Human-readable notes, printed to stderr by the CLI.
  std::vector<std::string> messages;
};

AnyCoder make_coder(CoderKind kind, const ExperimentConfig& config);

RunOutcome run_roundtrip(const ExperimentConfig& config);
RunOutcome run_sweep(const ExperimentConfig& config);
RunOutcome run_montecarlo(const ExperimentConfig& config);
RunOutcome run_errordist(const ExperimentConfig& config);
RunOutcome run_losscheck(const ExperimentConfig& config);

RunOutcome run(const ExperimentConfig& config);

/// Renders the outcome's table in the configured format.
std::string render(const RunOutcome& outcome, const ExperimentConfig& config);

/// Writes the rendered report to config.out_path ("-" is stdout). Throws
/// IoError when the file cannot be written.
void write_report(const RunOutcome& outcome, const ExperimentConfig& config);

}  // namespace fsc::experiments
