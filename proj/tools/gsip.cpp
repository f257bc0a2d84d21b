#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsip/commands.hpp"
#include "gsip/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Closed-form spectra of position-dependent-mass Hamiltonians, checked against a finite-difference solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;

  for (const char* name : {"generate", "verify", "sweep", "tabulate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "Run configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides run.out)");
    sub->add_option("--set", overrides, "Override a config entry, e.g. --set family.a=2.5");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? gsip::kExitPass : gsip::kExitConfigError;
  }

  const std::string command_text = app.get_subcommands().front()->get_name();
  try {
    std::ifstream file(config_path);
    if (!file) throw gsip::ConfigError("cannot read config '" + config_path + "'");
    std::ostringstream text;
    text << file.rdbuf();

    const gsip::RunConfig config =
        gsip::parse_config(text.str(), overrides, gsip::parse_command(command_text));
    return gsip::dispatch(config, out_dir.empty() ? config.out : out_dir, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "gsip " << command_text << ": " << e.what() << '\n';
    return gsip::exit_code_for(e);
  }
}
