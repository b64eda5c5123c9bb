#pragma once

// The radonlab command line: config parsing, the eight subcommands and report
// writing. run() is the whole program minus main(), so tests can drive it.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace radonlab::cli {

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kUsageError = 2 };

/// Largest N accepted on any grid, and largest dimension.
inline constexpr std::int64_t kMaxN = 4096;
inline constexpr int kMaxDim = 8;

struct ExperimentConfig {
  std::string command;
  std::optional<std::string> poly;
  std::optional<std::string> p, q, lambda;
  bool dual = false;
  std::optional<std::string> which;
  std::optional<int> d, m;
  std::vector<std::int64_t> n;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> quad;
  std::optional<std::int64_t> nmax, corpus, k, r, depth;
  bool brute_check = false;
  std::int64_t window_budget = std::int64_t{1} << 27;
  std::uint64_t tuple_budget = std::uint64_t{1} << 27;
  std::string format;  // "csv" or "json"; empty picks the command default
  std::string output;  // empty: stdout

  nlohmann::json echo() const;
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Report {
  std::string command;
  nlohmann::json config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<double> wall_ms;  // per row
  nlohmann::json fits = nlohmann::json::object();
  nlohmann::json witnesses = nlohmann::json::array();
  /// Replaces the table in JSON output when set (the region verdict).
  std::optional<nlohmann::json> document;
  int exit_code = kOk;
  std::vector<std::string> failures;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses argv (CLI11 flags, optionally merged over a --config JSON file) into
/// a validated config. Throws UsageError; `help` is set instead when --help was
/// asked for.
ExperimentConfig parse_config(int argc, const char* const* argv, std::string* help = nullptr);

/// Validation shared by flags and config files; throws UsageError.
void validate(const ExperimentConfig& config);

Report run_command(const ExperimentConfig& config);

std::string csv_field(const std::string& text);
std::string render_csv(const Report& report);
nlohmann::json render_json(const Report& report);

/// The whole program: parse, run, write, and return the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace radonlab::cli
