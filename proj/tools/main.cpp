// condenser: command-line front end for the potential-theory toolkit.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "condenser/cli/config.hpp"
#include "condenser/cli/run.hpp"
#include "condenser/cli/scenarios.hpp"

using namespace condenser;
using namespace condenser::cli;

namespace {

std::vector<std::string> split_formats(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int report_invalid(const std::vector<Diagnostic>& diags) {
  std::cerr << json{{"error", "invalid-config"}, {"diagnostics", diagnostics_json(diags)}}.dump() << "\n";
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar condenser modules, Green functions and extremal inequalities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string formats;
  std::optional<double> tolerance;
  app.add_option("--config", config_path, "JSON run config (see schemas/run_config.schema.json)");
  app.add_option("--seed", seed, "seed for random sweeps");
  app.add_option("--out", out_dir, "output directory for report.json and CSV tables");
  app.add_option("--format", formats, "comma-separated subset of json,csv");
  app.add_option("--tolerance", tolerance, "target relative error of the numeric solver");

  std::string inequality_name;
  std::optional<int> roots_of_unity;
  std::optional<int> trials;
  std::string scenario_name;

  std::map<std::string, CLI::App*> subs;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " command");
    subs[name] = sub;
  }
  subs["inequality"]->add_option("name", inequality_name, "inequality to check")->required();
  subs["inequality"]->add_option("--roots-of-unity", roots_of_unity, "one point per ray at the n-th roots of unity");
  subs["sweep"]->add_option("--trials", trials, "random trials per check");
  auto* run_sub = app.add_subcommand("run", "run a built-in scenario");
  run_sub->add_option("scenario", scenario_name, "scenario name")->required();
  auto* list_sub = app.add_subcommand("scenarios", "list the built-in scenarios");
  bool list_json = false;
  list_sub->add_flag("--json", list_json, "print names, descriptions and full configs as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  if (list_sub->parsed()) {
    if (list_json) {
      json out = json::array();
      for (const auto& s : scenario_catalog())
        out.push_back({{"name", s.name}, {"description", s.description}, {"config", s.config}});
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
    for (const auto& s : scenario_catalog()) std::cout << s.name << "\t" << s.description << "\n";
    return kExitOk;
  }

  json config;
  try {
    if (run_sub->parsed()) {
      const auto s = find_scenario(scenario_name);
      if (!s) return report_invalid({{"/scenario", "unknown scenario " + scenario_name}});
      config = s->config;
      if (!config_path.empty()) return report_invalid({{"/config", "--config cannot be combined with run"}});
    } else {
      const std::string command = app.get_subcommands().front()->get_name();
      config = config_path.empty() ? json{{"schema_version", kConfigSchemaVersion}, {"command", command}}
                                   : load_json_file(config_path);
      if (!config.is_object()) return report_invalid({{"", "config must be a JSON object"}});
      if (config.contains("command") && config["command"] != command)
        return report_invalid({{"/command", "config command does not match the subcommand " + command}});
      config["command"] = command;
      if (command == "inequality") {
        if (config.contains("name") && config["name"] != inequality_name)
          return report_invalid({{"/name", "config name does not match " + inequality_name}});
        config["name"] = inequality_name;
        if (roots_of_unity) config["params"]["roots_of_unity"] = *roots_of_unity;
        if (!config.contains("params")) config["params"] = json::object();
      }
      if (trials) config["params"]["trials"] = *trials;
      if (!config.contains("params")) config["params"] = json::object();
    }
  } catch (const ConfigError& e) {
    return report_invalid(e.diagnostics());
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  if (seed) config["seed"] = *seed;
  if (!out_dir.empty()) config["output"]["dir"] = out_dir;
  if (!formats.empty()) config["output"]["formats"] = split_formats(formats);
  if (tolerance) config["solver"]["target_relative_error"] = *tolerance;

  const auto diags = validate_config(config);
  if (!diags.empty()) return report_invalid(diags);
  const RunConfig rc = parse_config(config);
  const RunReport report = run(rc);
  try {
    if (rc.out_dir)
      emit(report, *rc.out_dir, rc.formats);
    else
      std::cout << to_json(report).dump(2) << "\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  if (report.exit_status != kExitOk) std::cerr << report.status << "\n";
  return report.exit_status;
}
