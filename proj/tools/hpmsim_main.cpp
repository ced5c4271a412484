// hpmsim: command-line front end for the HPM engagement model.
//
// Exit status: 0 success, 1 usage error, 2 scenario/validation error,
// 3 runtime or I/O failure.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hpmsim/io/dispatch.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::string usage_footer() {
  std::string s = "Subcommands:";
  for (const auto& c : hpmsim::io::subcommands()) s += " " + c;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  namespace io = hpmsim::io;

  CLI::App app{"High-power microwave counter-UAS engagement model"};
  app.footer(usage_footer());
  app.set_version_flag("--version", std::string(hpmsim::kVersion));

  std::string subcommand;
  std::string config_path;
  std::string range_text;
  std::string line_loss_text;
  std::string variant_text;
  std::string format_text;
  std::string out_path;
  io::RunOptions opt;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  unsigned threads = 0;
  double step = 0.0;
  double duty = 0.0;
  bool no_timestamp = false;
  bool reproduce = false;

  app.add_option("subcommand", subcommand, "Analysis to run");
  app.add_option("--config", config_path, "Scenario file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Monte Carlo seed");
  auto* trials_opt = app.add_option("--trials", trials, "Monte Carlo trials per range");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--range", range_text, "Sweep range a..b (metres, or the subcommand's sweep unit)");
  auto* step_opt = app.add_option("--step", step, "Sweep step");
  auto* duty_opt = app.add_option("--duty", duty, "Duty cycle in (0, 1]");
  app.add_option("--line-loss", line_loss_text, "Apply feed-line efficiency: on|off");
  app.add_option("--variant", variant_text, "Damage model for montecarlo: listing2|full");
  app.add_option("--format", format_text, "Output format: csv|json");
  app.add_option("--out", out_path, "Output file (or directory with --reproduce-paper)");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp metadata line");
  app.add_flag("--reproduce-paper", reproduce, "Run every reproduction into the --out directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (!reproduce && subcommand.empty()) {
    std::cerr << app.help() << "error: a subcommand or --reproduce-paper is required\n";
    return kExitUsage;
  }
  if (!reproduce) {
    const auto& names = io::subcommands();
    if (std::find(names.begin(), names.end(), subcommand) == names.end()) {
      std::cerr << app.help() << "error: unknown subcommand '" << subcommand << "'\n";
      return kExitUsage;
    }
  }

  try {
    io::Scenario scenario = config_path.empty() ? io::parse_scenario("") : io::load_scenario(config_path);
    try {
      if (!range_text.empty()) opt.range = io::parse_range(range_text);
      if (!line_loss_text.empty()) opt.line_loss = io::parse_line_loss(line_loss_text);
      if (!variant_text.empty()) opt.variant = io::parse_variant(variant_text);
      if (!format_text.empty()) scenario.output.format = io::parse_format(format_text);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    if (*seed_opt) opt.seed = seed;
    if (*trials_opt) opt.trials = trials;
    if (*threads_opt) opt.threads = threads;
    if (*step_opt) opt.step = step;
    if (*duty_opt) opt.duty = duty;
    opt.timestamp = !no_timestamp;
    if (!out_path.empty()) scenario.output.path = out_path;

    if (reproduce) {
      const std::string dir = scenario.output.path.empty() ? "reproduction" : scenario.output.path;
      for (const auto& p : io::reproduce_all(scenario, opt, scenario.output.format, dir)) std::cout << p.string() << '\n';
      return 0;
    }

    const auto tables = io::dispatch(subcommand, scenario, opt);
    if (scenario.output.path.empty())
      io::emit(tables, scenario.output.format, std::cout);
    else
      io::emit_to_file(tables, scenario.output.format, scenario.output.path);
    return 0;
  } catch (const io::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kExitValidation;
  } catch (const io::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << usage_footer() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
