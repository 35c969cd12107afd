#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fsc/experiments.hpp"
#include "json.hpp"

namespace fsc::experiments {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render_cell(const Cell& cell) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string{}; },
                        [](double v) { return format_number(v); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                        [](const std::string& v) { return csv_escape(v); },
                    },
                    cell);
}

nlohmann::json cell_json(const Cell& cell) {
  return std::visit(Overloaded{
                        [](std::monostate) { return nlohmann::json(nullptr); },
                        [](double v) {
                          // Round through the CSV text so both formats carry the same digits.
                          if (!std::isfinite(v)) return nlohmann::json(nullptr);
                          return nlohmann::json(std::stod(format_number(v)));
                        },
                        [](std::int64_t v) { return nlohmann::json(v); },
                        [](bool v) { return nlohmann::json(v); },
                        [](const std::string& v) { return nlohmann::json(v); },
                    },
                    cell);
}

std::string kinds_to_string(const std::vector<CoderKind>& kinds) {
  std::string out;
  for (const auto k : kinds) {
    if (!out.empty()) out += ',';
    out += to_string(k);
  }
  return out;
}

nlohmann::json config_echo(const ExperimentConfig& c) {
  nlohmann::json j;
  j["subcommand"] = to_string(c.subcommand);
  j["coder"] = to_string(c.coder);
  j["n_freq"] = c.n_freq;
  j["sigma"] = c.sigma;
  j["modulus"] = c.modulus;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["angle_step_deg"] = c.angle_step_deg;
  j["threshold"] = c.threshold ? nlohmann::json(*c.threshold) : nlohmann::json(nullptr);
  j["csl_bins"] = c.csl_bins;
  j["angle_deg"] = c.angle_deg ? nlohmann::json(*c.angle_deg) : nlohmann::json(nullptr);
  j["m_start"] = c.m_start;
  j["m_stop"] = c.m_stop;
  j["m_step"] = c.m_step;
  j["coders"] = kinds_to_string(c.coders);
  j["constrained"] = kinds_to_string(c.constrained);
  j["hist_bin_deg"] = c.hist_bin_deg;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  return j;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row width does not match the table header");
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return i;
  }
  throw std::out_of_range("no column named " + column);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render_cell(row[i]);
    os << '\n';
  }
}

std::string render(const RunOutcome& outcome, const ExperimentConfig& config) {
  if (config.format == OutputFormat::csv) {
    std::ostringstream os;
    write_csv(os, outcome.table);
    return os.str();
  }
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config_echo"] = config_echo(config);
  for (std::size_t c = 0; c < outcome.table.columns.size(); ++c) {
    auto column = nlohmann::json::array();
    for (const auto& row : outcome.table.rows) column.push_back(cell_json(row[c]));
    doc[outcome.table.columns[c]] = std::move(column);
  }
  return doc.dump(2) + "\n";
}

void write_report(const RunOutcome& outcome, const ExperimentConfig& config) {
  const std::string text = render(outcome, config);
  if (config.out_path == "-" || config.out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(config.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + config.out_path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + config.out_path);
}

}  // namespace fsc::experiments
