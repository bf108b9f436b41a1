// qfs: verification scenarios for finite symmetry models.
//
// Exit codes: 0 all checks passed, 1 at least one check failed, 2 input or
// usage error. Reports are byte-reproducible for a fixed (command line, seed)
// unless --timing is given.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qfs/models.hpp"
#include "qfs/scenarios.hpp"

namespace {

struct Options {
  std::uint64_t seed = 1;
  double tol = 1e-10;
  bool tol_given = false;
  std::string output;
  std::string format = "json";
  bool timing = false;
};

qfs::scenarios::ScenarioConfig make_config(const Options& opt) {
  qfs::scenarios::ScenarioConfig config;
  config.seed = opt.seed;
  if (opt.tol_given) {
    config.tol_linalg = opt.tol;
    // Representation-level checks accumulate more rounding; never tighten
    // them below their default.
    config.tol_representation = std::max(opt.tol, config.tol_representation);
  }
  return config;
}

int write_text(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << opt.output << "' for writing\n";
    return 2;
  }
  out << text;
  return out.good() ? 0 : 2;
}

std::string render_csv(const qfs::scenarios::ScenarioReport& report) {
  std::ostringstream csv;
  csv << report.checks_csv();
  for (const auto& [name, table] : report.tables) csv << "\n# " << name << "\n" << table;
  return csv.str();
}

int emit_report(const Options& opt, const qfs::scenarios::ScenarioReport& report) {
  const std::string text = opt.format == "csv"
                               ? render_csv(report)
                               : report.to_json(opt.timing).dump(2) + "\n";
  const int io = write_text(opt, text);
  if (io != 0) return io;
  return report.all_pass() ? 0 : 1;
}

qfs::Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qfs::Error("cannot read '" + path + "'");
  try {
    return qfs::Json::parse(in);
  } catch (const std::exception& e) {
    throw qfs::Error("invalid JSON in '" + path + "': " + e.what());
  }
}

int run_list(const Options& opt) {
  const auto scenarios = qfs::scenarios::list_scenarios();
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "name,summary\n";
    for (const auto& s : scenarios) csv << s.name << ",\"" << s.summary << "\"\n";
    text = csv.str();
  } else {
    qfs::Json j = qfs::Json::array();
    for (const auto& s : scenarios) j.push_back({{"name", s.name}, {"summary", s.summary}});
    text = j.dump(2) + "\n";
  }
  return write_text(opt, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification scenarios for finite symmetry models"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "seed for all randomized sweeps")
      ->capture_default_str();
  auto* tol_flag =
      app.add_option("--tol", opt.tol, "tolerance for linear-algebra checks")
          ->capture_default_str();
  app.add_option("--output", opt.output, "write the report to this path instead of stdout");
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--timing", opt.timing,
               "include runtime_ms in JSON reports (not byte-reproducible)");

  auto* verify = app.add_subcommand("verify", "structural checks on a model JSON file");
  std::string model_path;
  verify->add_option("model", model_path, "path to a model JSON file")->required();
  verify->fallthrough();

  auto* run = app.add_subcommand("run", "run a named scenario");
  std::string scenario;
  run->add_option("scenario", scenario, "scenario name, see `qfs list`")->required();
  run->fallthrough();

  auto* list = app.add_subcommand("list", "list available scenarios");
  list->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.tol_given = tol_flag->count() > 0;

  try {
    if (list->parsed()) return run_list(opt);
    const qfs::scenarios::ScenarioConfig config = make_config(opt);
    if (verify->parsed()) {
      const qfs::models::ModelFile model =
          qfs::models::model_from_json(load_json_file(model_path));
      std::string name = model_path;
      const auto slash = name.find_last_of('/');
      if (slash != std::string::npos) name = name.substr(slash + 1);
      return emit_report(opt, qfs::scenarios::verify_model(model, name, config));
    }
    return emit_report(opt, qfs::scenarios::run_by_name(scenario, config));
  } catch (const qfs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
