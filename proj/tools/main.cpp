#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "archetypal/types.hpp"
#include "commands.hpp"

using archetypal::cli::Config;

namespace {

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> flags;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "key = value settings file");
  for (const char* name : {"seed", "out-dir", "solver", "init", "lambda", "r", "input",
                           "h0", "h-hat", "sigma", "generator"}) {
    sub->add_option(std::string("--") + name, o.flags[name]);
  }
  sub->add_option("--set", o.sets, "extra key=value setting (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Archetype estimation toolkit"};
  app.require_subcommand(1);
  Overrides o;
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : std::vector<std::pair<const char*, const char*>>{
           {"synth", "generate a synthetic dataset"},
           {"fit", "estimate archetypes from a data matrix"},
           {"eval", "compare estimated archetypes with the truth"},
           {"sweep", "loss versus noise level over replicates"},
           {"alpha", "uniqueness constant along the hexagon family"}}) {
    subs.push_back(app.add_subcommand(name, help));
    add_common(subs.back(), o);
  }
  CLI11_PARSE(app, argc, argv);

  Config cfg;
  try {
    if (!o.config_path.empty()) cfg = Config::load(o.config_path);
    for (const auto& [name, value] : o.flags) {
      if (value.empty()) continue;
      std::string key = name;
      for (char& c : key) {
        if (c == '-') c = '_';
      }
      cfg.set(key, value);
    }
    for (const std::string& s : o.sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) {
        std::cerr << "--set expects key=value, got '" << s << "'\n";
        return archetypal::cli::kInputError;
      }
      cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
  } catch (const archetypal::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return archetypal::cli::kInputError;
  }

  for (CLI::App* sub : subs) {
    if (sub->parsed()) return archetypal::cli::run_command(sub->get_name(), cfg, std::cerr);
  }
  return archetypal::cli::kInputError;
}
