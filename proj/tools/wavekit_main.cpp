// wavekit: phase-space toolkit runner for dispersive wave-train propagation.
// Subcommands: run (scenario -> CSV/JSON artifacts), plot (plain-text plot
// data from a run directory), selftest (invariant battery).
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "wavekit/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wavekit: semiclassical wave-train propagation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory (default: <config stem>_out)");
  run->add_option("--seed", seed, "override the probe seed")->each([&](const std::string&) {
    seed_given = true;
  });

  std::string run_dir;
  auto* plot = app.add_subcommand("plot", "emit plain-text plot data from a run directory");
  plot->add_option("run_dir", run_dir, "directory produced by 'wavekit run'")->required();

  auto* self = app.add_subcommand("selftest", "run the invariant suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      wavekit::Scenario sc = wavekit::parse_scenario_file(config_path);
      if (seed_given) sc.probe_seed = seed;
      if (sc.k0 * sc.w0 < 2.0 * wavekit::kPi)
        std::cerr << "warning: k0 w0 < 2 pi, paraxial ordering is marginal\n";
      std::ifstream in(config_path);
      std::string echo((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      const std::filesystem::path out =
          out_dir.empty()
              ? std::filesystem::path(std::filesystem::path(config_path).stem().string() + "_out")
              : std::filesystem::path(out_dir);
      return wavekit::run_scenario(sc, echo, out);
    }
    if (plot->parsed()) return wavekit::emit_plot_data(run_dir);
    if (self->parsed()) return wavekit::selftest(std::cout);
  } catch (const wavekit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
