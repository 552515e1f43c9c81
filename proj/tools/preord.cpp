#include "CLI11.hpp"
#include "preord/cli.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  preord::CliOptions opts;
  std::string command;
  std::vector<std::string> args;
  std::string out_path;
  std::string workspace;

  std::string commands;
  for (const auto& c : preord::command_names()) commands += "\n  " + c;

  CLI::App app{"Preordered groups and positive cones.\n\ncommands:" + commands, "preord"};
  app.add_option("command", command, "command to run")->required();
  app.add_option("args", args, "command arguments");
  app.add_option("-w,--workspace", workspace, "workspace file");
  app.add_option("--seed", opts.seed, "RNG seed for check commands");
  app.add_option("--samples", opts.samples, "draws per object pair for check commands")
      ->check(CLI::PositiveNumber);
  app.add_option("--universe-cap", opts.order_cap, "largest finite group order accepted")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "write results to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return preord::kExitUsage;
  }
  if (!workspace.empty()) opts.workspace = workspace;

  auto r = preord::run_command(command, args, opts);
  std::cerr << r.err;
  if (out_path.empty()) {
    std::cout << r.out;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return preord::kExitUsage;
    }
    f << r.out;
  }
  return r.code;
}
