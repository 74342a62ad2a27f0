// Command-line front end for the experiment runner.
//
//   qrand <command> [--key value ...] [--config file.json] [--out prefix]
//
// Exit status: 0 when every flag passed, 2 when the run finished with failed
// flags or a tripped guard, 1 on usage or I/O errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrand/errors.hpp"
#include "qrand/version.hpp"
#include "qrand/xcli.hpp"

namespace {

std::map<std::string, std::string> read_config_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  const nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_object()) throw std::runtime_error("config file must hold a JSON object");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
      out[key] = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      out[key] = value.dump();
    } else if (value.is_number()) {
      out[key] = value.dump();
    } else {
      throw std::runtime_error("config key '" + key + "' must be a scalar");
    }
  }
  return out;
}

void print_summary(const qrand::ExperimentReport& report)
{
  std::cout << report.command << "  (" << report.wall_seconds << " s)\n";
  for (const auto& [name, value] : report.statistics) std::cout << "  " << name << " = " << value << "\n";
  for (const auto& [name, ok] : report.flags) std::cout << "  [" << (ok ? "PASS" : "FAIL") << "] " << name << "\n";
  if (report.error) std::cout << "  error: " << *report.error << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Approximate randomization of quantum states: experiment runner"};
  app.set_version_flag("--version", std::string(qrand::kVersion) + " (" + qrand::kGitDescribe + ")");
  app.require_subcommand(1);

  struct Command {
    CLI::App* sub = nullptr;
    std::map<std::string, std::string> flags;
    std::string config_file;
    std::string out;
    bool quiet = false;
  };
  std::map<std::string, Command> commands;
  for (const auto& name : qrand::experiment_commands()) {
    Command& c = commands[name];
    c.sub = app.add_subcommand(name, "run the '" + name + "' experiment");
    for (const auto& key : qrand::command_parameters(name)) {
      c.sub->add_option_function<std::string>(
          "--" + key, [&c, key](const std::string& v) { c.flags[key] = v; }, key);
    }
    c.sub->add_option("--config", c.config_file, "JSON file of parameters; flags override it");
    c.sub->add_option("--out", c.out, "report prefix: writes <prefix>.json and <prefix>.csv");
    c.sub->add_flag("--quiet", c.quiet, "suppress the console summary");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (auto& [name, c] : commands) {
    if (!c.sub->parsed()) continue;
    try {
      qrand::ExperimentConfig config;
      config.command = name;
      if (!c.config_file.empty()) config.params = read_config_file(c.config_file);
      for (const auto& [key, value] : c.flags) config.params[key] = value;
      config.output_path = c.out;
      const qrand::ExperimentReport report = qrand::run(config);
      if (!c.quiet) print_summary(report);
      return report.all_passed() ? 0 : 2;
    } catch (const qrand::UsageError& e) {
      std::cerr << "usage error (" << e.key() << "): " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
