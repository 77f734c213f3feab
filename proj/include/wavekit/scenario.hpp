#pragma once

// Scenario runner: ingest a JSON config describing medium, initial wave
// train, and requested analyses; run the beam/oracle/rays/wigner/parametrix
// pipelines; emit CSV/JSON artifacts plus plain-text plot data. All physical
// inputs are nondimensionalized at ingestion by (c, omega_ref = c k0): lengths
// in 1/k0, times in 1/(c k0). Outputs are deterministic: fixed seeds, fixed
// iteration orders, 17-significant-digit floats.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wavekit/common.hpp"
#include "wavekit/errors.hpp"

namespace wavekit {

enum class MediumKind { vacuum, cold_plasma, table, overrides };

struct Scenario {
  MediumKind medium_kind = MediumKind::vacuum;
  double omega_pe = 0.0;        // cold_plasma, raw units
  double omega_pe_ramp = 0.0;   // optional linear time ramp rate (parametrix)
  std::optional<double> nu;     // fictitious collision frequency, raw units
  std::vector<double> table_omega, table_n;
  std::optional<double> override_r, override_vg_over_vp;
  double c = 1.0;

  double a0 = 1.0, w0 = 0.0, k0 = 0.0;  // train, raw units

  int grid_m = 0;            // 0: auto from the sizing rule
  double grid_margin = 8.0;

  std::vector<double> times;  // raw units
  std::vector<std::string> analyses;

  double ode_tol = 1e-9;
  double shell_tol = 1e-6;
  std::uint64_t probe_seed = 12345;
};

// strict parsing: unknown keys anywhere are errors (fail-fast)
Scenario parse_scenario_file(const std::filesystem::path& config_path);
Scenario parse_scenario_string(const std::string& text);

// runs the requested analyses and writes artifacts under out_dir; the
// config_echo string is embedded verbatim-equivalent in run.json
int run_scenario(const Scenario& sc, const std::string& config_echo,
                 const std::filesystem::path& out_dir);

// two-column plain-text plot files derived from an existing run directory
int emit_plot_data(const std::filesystem::path& run_dir);

// quick invariant battery; prints one ok/FAIL line per check
int selftest(std::ostream& out);

}  // namespace wavekit
