#include "resdyn_cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "resdyn/census.hpp"
#include "resdyn/conjugacy.hpp"
#include "resdyn/errors.hpp"
#include "resdyn/json_io.hpp"
#include "resdyn/moduli.hpp"
#include "resdyn/reduction.hpp"
#include "resdyn/resultant.hpp"

namespace resdyn::cli {
namespace {

constexpr const char* kSubcommands[] = {"resultant", "reduce", "invariants", "twist-test", "census", "report"};

// Error raised by argument handling; reported with exit code 2.
struct UsageError {
  std::string code;
  std::string message;
};

void write_error(std::ostream& err, const std::string& code, const std::string& message) {
  Json body;
  body["error"]["code"] = code;
  body["error"]["message"] = message;
  err << body.dump() << '\n';
}

void log_line(std::ostream& err, const std::string& message) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  err << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << ' ' << message << '\n';
}

std::string read_input(const std::string& path, std::istream& in) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError{"io_error", "cannot open " + path};
    buffer << file.rdbuf();
  }
  return buffer.str();
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError{"malformed_json", source + ": " + e.what()};
  }
}

MorphismModel load_morphism(const std::string& path, std::istream& in) {
  return morphism_from_json(parse_json(read_input(path, in), path));
}

SearchBudget parse_budget(const std::string& text, int degree) {
  if (text.empty()) return SearchBudget::defaults(degree);
  std::vector<long> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw UsageError{"invalid_arguments", "budget entries must be non-negative integers: " + text};
    }
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw UsageError{"invalid_arguments", "budget is max_power,translation_depth,conjugacy_box[,max_translations]"};
  }
  SearchBudget budget;
  budget.max_power = static_cast<int>(parts[0]);
  budget.translation_depth = static_cast<int>(parts[1]);
  budget.conjugacy_box = static_cast<int>(parts[2]);
  if (parts.size() == 4) budget.max_translations = static_cast<std::size_t>(parts[3]);
  return budget;
}

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(Rational::parse(item));
    } catch (const Error&) {
      throw UsageError{"invalid_arguments", "bad bound in --grid: " + item};
    }
  }
  return grid;
}

void emit(std::ostream& out, const Json& payload) { out << payload.dump() << '\n'; }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Resultants, reduction and conjugacy of endomorphisms of projective space", "resdyn"};
  app.set_help_flag();
  app.set_version_flag();
  app.allow_windows_style_options(false);
  bool help = false;
  bool schema = false;
  app.add_flag("-h,--help", help, "Print help");
  app.add_flag("--schema", schema, "Print the JSON schemas of all payloads");

  std::string input;
  std::string second_input;
  std::string backend_name = "bareiss";
  std::string budget_text;
  bool verbose = false;

  auto* resultant = app.add_subcommand("resultant", "Macaulay resultant of a morphism");
  resultant->add_option("input", input, "Morphism JSON path, or - for stdin")->required();
  resultant->add_option("--backend", backend_name, "Determinant backend: bareiss or modular_crt");

  auto* reduce = app.add_subcommand("reduce", "Bad-reduction data and minimal resultant");
  reduce->add_option("input", input, "Morphism JSON path, or - for stdin")->required();
  reduce->add_option("--budget", budget_text, "max_power,translation_depth,conjugacy_box[,max_translations]");

  auto* invariants = app.add_subcommand("invariants", "Moduli invariants and height");
  invariants->add_option("input", input, "Morphism JSON path, or - for stdin")->required();

  auto* twist = app.add_subcommand("twist-test", "Decide whether two degree-2 maps are conjugate over Q");
  twist->add_option("phi", input, "First morphism JSON path")->required();
  twist->add_option("psi", second_input, "Second morphism JSON path")->required();
  twist->add_option("--budget", budget_text, "max_power,translation_depth,conjugacy_box[,max_translations]");

  int census_n = 1;
  int census_d = 2;
  int census_h = 2;
  std::string census_b = "8";
  std::string census_out;
  std::string grid_text;
  unsigned threads = 1;
  std::size_t stop_after = 0;
  auto* census = app.add_subcommand("census", "Bounded-height census");
  census->add_option("--n", census_n, "Projective dimension");
  census->add_option("--d", census_d, "Degree");
  census->add_option("--H", census_h, "Coefficient bound");
  census->add_option("--B", census_b, "Bound for norm and height");
  census->add_option("--budget", budget_text, "max_power,translation_depth,conjugacy_box[,max_translations]");
  census->add_option("--out", census_out, "Records file (JSON lines)")->required();
  census->add_option("--grid", grid_text, "Comma-separated bounds for the summary table");
  census->add_option("--threads", threads, "Worker count")->check(CLI::PositiveNumber);
  census->add_option("--stop-after", stop_after, "Write at most this many new records and stop");
  census->add_flag("-v,--verbose", verbose, "Log progress to standard error");

  bool text_report = false;
  auto* report = app.add_subcommand("report", "Class-count table from a census summary JSON");
  report->add_option("summary", input, "Summary JSON path, or - for stdin")->required();
  report->add_flag("--text", text_report, "Print the plain-text table instead of JSON");

  app.require_subcommand(0, 1);

  try {
    // CLI11 reports stray words as extras; name the unknown subcommand
    // explicitly instead.
    if (!args.empty() && !args.front().empty() && args.front().front() != '-') {
      bool known = false;
      for (const char* name : kSubcommands) known = known || args.front() == name;
      if (!known) throw UsageError{"unknown_subcommand", "unknown subcommand: " + args.front()};
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      throw UsageError{"invalid_arguments", e.what()};
    }
    if (help) {
      out << app.help();
      return kExitOk;
    }
    if (schema) {
      out << payload_schemas().dump(2) << '\n';
      return kExitOk;
    }

    if (resultant->parsed()) {
      DeterminantBackend backend;
      try {
        backend = parse_determinant_backend(backend_name);
      } catch (const Error& e) {
        throw UsageError{"invalid_arguments", e.what()};
      }
      emit(out, resultant_to_json(macaulay_resultant(load_morphism(input, in), backend)));
    } else if (reduce->parsed()) {
      const MorphismModel phi = load_morphism(input, in);
      emit(out, reduction_report_to_json(reduction_report(phi, parse_budget(budget_text, phi.degree()))));
    } else if (invariants->parsed()) {
      emit(out, moduli_point_to_json(moduli_height(load_morphism(input, in))));
    } else if (twist->parsed()) {
      if (input == "-" && second_input == "-") throw UsageError{"invalid_arguments", "only one input may be stdin"};
      const MorphismModel phi = load_morphism(input, in);
      const MorphismModel psi = load_morphism(second_input, in);
      emit(out, verdict_to_json(conjugacy_test(phi, psi, parse_budget(budget_text, phi.degree()))));
    } else if (census->parsed()) {
      CensusConfig config;
      config.n = census_n;
      config.d = census_d;
      config.coeff_bound = census_h;
      try {
        config.bound = Rational::parse(census_b);
      } catch (const Error& e) {
        throw UsageError{"invalid_arguments", std::string("bad --B: ") + e.what()};
      }
      config.search = parse_budget(budget_text, census_d);
      config.output_path = census_out;
      config.bound_grid = parse_grid(grid_text);
      config.threads = threads;
      if (stop_after > 0) config.stop_after = stop_after;
      if (census_n < 1 || census_n > 8 || census_d < 1 || census_d > 32) {
        throw UsageError{"invalid_arguments", "census supports 1 <= n <= 8 and 1 <= d <= 32"};
      }
      if (verbose) log_line(err, "census start H=" + std::to_string(census_h) + " B=" + config.bound.to_string());
      const CensusSummary summary = run_census(config);
      if (verbose) {
        log_line(err, "census done records=" + std::to_string(summary.records) +
                          " written=" + std::to_string(summary.written_this_run));
      }
      emit(out, summary.complete ? summary.to_json()
                                 : Json{{"complete", false},
                                        {"records", summary.records},
                                        {"written_this_run", summary.written_this_run}});
    } else if (report->parsed()) {
      const std::string table = report_from_summary_json(parse_json(read_input(input, in), input));
      if (text_report) {
        out << table;
      } else {
        emit(out, Json{{"table", table}});
      }
    } else {
      out << app.help();
      return kExitOk;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    write_error(err, e.code, e.message);
    return kExitValidation;
  } catch (const CensusAssertion& e) {
    write_error(err, e.code(), e.what());
    return kExitInternal;
  } catch (const UnfactoredResidue& e) {
    write_error(err, e.code(), e.what());
    return kExitInternal;
  } catch (const Error& e) {
    // io_error is environmental, everything else is an input the library
    // rejected.
    write_error(err, e.code(), e.what());
    return e.code() == "io_error" ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    write_error(err, "internal_error", e.what());
    return kExitInternal;
  }
}

}  // namespace resdyn::cli
