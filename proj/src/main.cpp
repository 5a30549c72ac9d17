#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "bcqec/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"blind-cqec benchmark driver"};
  std::string subcommand, config_file, out_dir = "out";
  std::uint64_t seed = 42;
  int workers = 0;
  bool check = false;
  app.add_option("subcommand", subcommand, "one of: sweep-noise, sweep-dim, "
                 "sweep-copies, sensitivity, mixed-hybrid, qem-compare, "
                 "correlation, vqe, circuit-sanity, crossover, all")
      ->required();
  app.add_option("--config", config_file, "key = value config file");
  app.add_option("--seed", seed, "master seed (default 42)");
  app.add_option("--out", out_dir, "output directory (default ./out)");
  app.add_option("--workers", workers, "worker threads; 0 = hardware default");
  app.add_flag("--check", check, "exit 1 when built-in thresholds fail");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto& names = bcqec::command_names();
    if (std::find(names.begin(), names.end(), subcommand) == names.end())
      throw bcqec::ConfigError("unknown subcommand: " + subcommand);
    bcqec::BenchmarkConfig cfg;
    if (!config_file.empty())
      cfg = bcqec::BenchmarkConfig::from_file(config_file);
    // flags override config-file values; config overrides defaults
    cfg.master_seed = app.count("--seed")
                          ? seed
                          : static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    cfg.out_dir = app.count("--out") ? out_dir : cfg.get_string("out", "out");
    cfg.workers = app.count("--workers")
                      ? workers
                      : static_cast<int>(cfg.get_int("workers", 0));
    cfg.check = check;
    return bcqec::run_command(subcommand, cfg);
  } catch (const bcqec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
