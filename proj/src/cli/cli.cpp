#include <fstream>
#include <iostream>

#include "cli.hpp"
#include "radonlab/errors.hpp"

namespace radonlab::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  std::string help;
  try {
    config = parse_config(argc, argv, &help);
  } catch (const UsageError& e) {
    err << "radonlab: " << e.what() << "\n";
    return kUsageError;
  }
  if (!help.empty()) {
    out << help;
    return kOk;
  }

  Report report;
  try {
    report = run_command(config);
  } catch (const UsageError& e) {
    err << "radonlab: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    // Library errors at run time come from inputs the config allowed through
    // (budgets, non-injective polynomials, ...); they are configuration errors.
    err << "radonlab " << config.command << ": " << e.what() << "\n";
    return kUsageError;
  }

  const std::string text = config.format == "json" ? render_json(report).dump(2) + "\n" : render_csv(report);
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "radonlab: cannot write '" << config.output << "'\n";
      return kUsageError;
    }
    file << text;
  }
  // CSV has no room for witnesses; they go to stderr and, with --output, next to the report.
  if (config.format == "csv" && !report.witnesses.empty()) {
    const std::string w = report.witnesses.dump(2) + "\n";
    err << w;
    if (!config.output.empty()) std::ofstream(config.output + ".witness.json", std::ios::binary) << w;
  }
  for (const auto& f : report.failures) err << "radonlab " << config.command << ": FAILED " << f << "\n";
  return report.exit_code;
}

}  // namespace radonlab::cli
