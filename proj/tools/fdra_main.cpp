// fdra — resource allocation experiments for a full-duplex base station
// OFDMA cell. Subcommands cover scenario generation, single-scheme solves
// and the two comparison studies; see README.md.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdra/experiments.hpp"

namespace {

// Exit codes, also printed as the machine-readable error category.
enum ExitCode : int {
  kOk = 0,
  kUsageError = 2,
  kParseError = 3,
  kValidationError = 4,
  kSizeError = 5,
  kIoError = 6,
};

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string scheme;
  std::vector<double> sweep;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (flags win)");
  cmd->add_option("--out", f.out_path, "output path (default stdout)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", f.seed, "base RNG seed");
  cmd->add_option("--sweep", f.sweep, "BS power sweep points in dBm");
  cmd->add_option("--trials", f.trials, "trials per sweep point");
  cmd->add_option(
      "--scheme", f.scheme,
      "one of proposed, exhaustive, random, greedy, joint, equal");
}

fdra::RunConfig build_config(const CommonFlags& f, const std::string& experiment) {
  fdra::RunConfig c;
  if (!f.config_path.empty()) c = fdra::load_run_config(f.config_path);
  c.experiment = experiment;
  if (!f.out_path.empty()) c.output_path = f.out_path;
  if (!f.format.empty())
    c.format = f.format == "json" ? fdra::OutputFormat::kJson
                                  : fdra::OutputFormat::kCsv;
  if (!f.scheme.empty()) c.scheme = f.scheme;
  if (!f.sweep.empty()) c.bs_power_sweep_dbm = f.sweep;
  if (f.seed) c.scenario.seed = *f.seed;
  if (f.trials) c.trials = *f.trials;
  return c;
}

void emit(const fdra::RunResult& result, const fdra::RunConfig& c) {
  if (c.output_path.empty()) {
    fdra::write_result(result, std::cout, c.format);
    return;
  }
  std::ofstream out(c.output_path);
  if (!out)
    throw std::runtime_error("cannot open output '" + c.output_path + "'");
  fdra::write_result(result, out, c.format);
}

int fail(ExitCode code, const char* category, const std::string& message) {
  std::cerr << "fdra: error category=" << category << " message=\"" << message
            << "\"\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"full-duplex BS OFDMA resource allocation experiments"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string scenario_out;
  std::string scenario_in;
  fdra::ScenarioParams gen_params;

  CLI::App* gen = app.add_subcommand("gen", "write a scenario JSON");
  gen->add_option("--out", scenario_out, "scenario output path")->required();
  gen->add_option("--seed", flags.seed, "scenario seed");
  gen->add_option("--uue", gen_params.M, "number of uplink users");
  gen->add_option("--due", gen_params.N, "number of downlink users");
  gen->add_option("--subchannels", gen_params.K, "number of subchannels");
  gen->add_option("--bs-power-dbm", gen_params.bs_power_dbm, "BS budget");
  gen->add_option("--cell-radius", gen_params.cell_radius_m, "cell radius, m");

  CLI::App* solve = app.add_subcommand("solve", "run one scheme on a scenario file");
  solve->add_option("--in", scenario_in, "scenario JSON path")->required();
  add_common(solve, flags);

  CLI::App* assign = app.add_subcommand(
      "assign-compare", "mapping schemes under equal power (Fig.-1 study)");
  add_common(assign, flags);

  CLI::App* joint = app.add_subcommand(
      "joint-compare", "joint solver vs equal power (Fig.-2 study)");
  add_common(joint, flags);

  CLI::App* sweep = app.add_subcommand("sweep", "one scheme over a BS power sweep");
  add_common(sweep, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (flags.seed) gen_params.seed = *flags.seed;
      fdra::save_scenario(fdra::generate_scenario(gen_params), scenario_out);
      return kOk;
    }
    fdra::RunConfig config;
    fdra::RunResult result;
    if (solve->parsed()) {
      config = build_config(flags, "solve");
      config.input_path = scenario_in;
      result = fdra::solve_file(config);
    } else if (assign->parsed()) {
      config = build_config(flags, "assign-compare");
      result = fdra::assign_compare(config);
    } else if (joint->parsed()) {
      config = build_config(flags, "joint-compare");
      result = fdra::joint_compare(config);
    } else {
      config = build_config(flags, "sweep");
      result = fdra::sweep_scheme(config);
    }
    emit(result, config);
    return kOk;
  } catch (const std::length_error& e) {
    return fail(kSizeError, "size", e.what());
  } catch (const std::domain_error& e) {
    return fail(kValidationError, "validation", e.what());
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find("unknown scheme") != std::string::npos ||
        what.find("required") != std::string::npos)
      return fail(kUsageError, "usage", what);
    return fail(kValidationError, "validation", what);
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    if (what.find("parse") != std::string::npos)
      return fail(kParseError, "parse", what);
    return fail(kIoError, "io", what);
  }
}
