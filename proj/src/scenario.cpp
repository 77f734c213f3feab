#include "wavekit/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <set>

#include "wavekit/beam.hpp"
#include "wavekit/io_util.hpp"
#include "wavekit/oracle.hpp"
#include "wavekit/parametrix.hpp"
#include "wavekit/rng.hpp"
#include "wavekit/wigner.hpp"

namespace wavekit {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
  if (!obj[key].is_number()) throw ConfigError("key '" + key + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

Scenario parse_scenario_json(const json& cfg) {
  if (!cfg.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(cfg, {"medium", "c", "train", "grid", "times", "analyses", "tolerances"},
                 "config root");

  Scenario sc;
  if (cfg.contains("c")) sc.c = cfg["c"].get<double>();
  if (sc.c <= 0.0) throw ConfigError("c must be positive");

  if (!cfg.contains("medium") || !cfg["medium"].is_object())
    throw ConfigError("config needs a 'medium' object");
  const json& med = cfg["medium"];
  const std::string kind = med.value("kind", "");
  if (kind == "vacuum") {
    reject_unknown(med, {"kind"}, "medium");
    sc.medium_kind = MediumKind::vacuum;
  } else if (kind == "cold_plasma") {
    reject_unknown(med, {"kind", "omega_pe", "omega_pe_ramp", "nu", "r", "vg_over_vp"}, "medium");
    sc.medium_kind = MediumKind::cold_plasma;
    sc.omega_pe = require_number(med, "omega_pe", "medium");
    sc.omega_pe_ramp = med.value("omega_pe_ramp", 0.0);
    if (med.contains("nu")) sc.nu = med["nu"].get<double>();
    if (med.contains("r")) sc.override_r = med["r"].get<double>();
    if (med.contains("vg_over_vp")) sc.override_vg_over_vp = med["vg_over_vp"].get<double>();
  } else if (kind == "table") {
    reject_unknown(med, {"kind", "omega", "n", "r", "vg_over_vp"}, "medium");
    sc.medium_kind = MediumKind::table;
    if (!med.contains("omega") || !med.contains("n"))
      throw ConfigError("table medium needs 'omega' and 'n' arrays");
    sc.table_omega = med["omega"].get<std::vector<double>>();
    sc.table_n = med["n"].get<std::vector<double>>();
    if (med.contains("r")) sc.override_r = med["r"].get<double>();
    if (med.contains("vg_over_vp")) sc.override_vg_over_vp = med["vg_over_vp"].get<double>();
  } else if (kind == "overrides") {
    reject_unknown(med, {"kind", "r", "vg_over_vp"}, "medium");
    sc.medium_kind = MediumKind::overrides;
    sc.override_r = require_number(med, "r", "medium");
    sc.override_vg_over_vp = require_number(med, "vg_over_vp", "medium");
  } else {
    throw ConfigError("medium.kind must be vacuum|cold_plasma|table|overrides");
  }

  if (!cfg.contains("train") || !cfg["train"].is_object())
    throw ConfigError("config needs a 'train' object");
  const json& train = cfg["train"];
  reject_unknown(train, {"A0", "w0", "k0"}, "train");
  sc.a0 = require_number(train, "A0", "train");
  sc.w0 = require_number(train, "w0", "train");
  sc.k0 = require_number(train, "k0", "train");

  if (cfg.contains("grid")) {
    const json& grid = cfg["grid"];
    reject_unknown(grid, {"M", "margin"}, "grid");
    if (grid.contains("M")) sc.grid_m = grid["M"].get<int>();
    if (grid.contains("margin")) sc.grid_margin = grid["margin"].get<double>();
  }

  if (cfg.contains("times")) sc.times = cfg["times"].get<std::vector<double>>();
  for (std::size_t i = 0; i < sc.times.size(); ++i) {
    if (sc.times[i] < 0.0) throw ConfigError("times must be nonnegative");
    if (i > 0 && sc.times[i] <= sc.times[i - 1]) throw ConfigError("times must increase");
  }

  if (!cfg.contains("analyses")) throw ConfigError("config needs an 'analyses' array");
  sc.analyses = cfg["analyses"].get<std::vector<std::string>>();
  const std::set<std::string> known{"beam", "oracle", "compare", "rays", "wigner", "parametrix"};
  for (const auto& a : sc.analyses)
    if (!known.count(a)) throw ConfigError("unknown analysis '" + a + "'");

  if (cfg.contains("tolerances")) {
    const json& tol = cfg["tolerances"];
    reject_unknown(tol, {"ode_tol", "shell_tol", "probe_seed"}, "tolerances");
    if (tol.contains("ode_tol")) sc.ode_tol = tol["ode_tol"].get<double>();
    if (tol.contains("shell_tol")) sc.shell_tol = tol["shell_tol"].get<double>();
    if (tol.contains("probe_seed")) sc.probe_seed = tol["probe_seed"].get<std::uint64_t>();
  }
  return sc;
}

// ---------------------------------------------------------------------------
// nondimensional working set

struct Workset {
  TrainSpec spec;                                   // k0 = 1 after scaling
  BeamParams params;
  std::shared_ptr<const RefractiveMedium> medium;   // null for overrides
  std::vector<double> times;                        // scaled
  double omega_pe = 0.0, omega_pe_ramp = 0.0, nu = 0.0;
  bool has_analysis(const Scenario& sc, const std::string& name) const {
    return std::find(sc.analyses.begin(), sc.analyses.end(), name) != sc.analyses.end();
  }
};

Workset build_workset(const Scenario& sc) {
  Workset w;
  const double om_ref = sc.c * sc.k0;  // time unit 1/(c k0), length unit 1/k0
  if (sc.k0 <= 0.0 || sc.w0 <= 0.0 || sc.a0 <= 0.0)
    throw ConfigError("train A0, w0, k0 must be positive");

  w.spec.a0 = sc.a0;
  w.spec.w0 = sc.w0 * sc.k0;
  w.spec.k0 = 1.0;
  try {
    w.spec.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  w.times.reserve(sc.times.size());
  for (double t : sc.times) w.times.push_back(t * om_ref);

  switch (sc.medium_kind) {
    case MediumKind::vacuum: w.medium = make_vacuum(1.0); break;
    case MediumKind::cold_plasma: {
      if (sc.omega_pe <= 0.0) throw ConfigError("omega_pe must be positive");
      w.omega_pe = sc.omega_pe / om_ref;
      w.omega_pe_ramp = sc.omega_pe_ramp / om_ref;
      w.nu = sc.nu ? (*sc.nu / om_ref) : 1e-3 * std::max(w.omega_pe, 1.0);
      if (w.nu <= 0.0) throw ConfigError("nu must be positive");
      w.medium = make_cold_plasma(w.omega_pe, 1.0);
      break;
    }
    case MediumKind::table: {
      std::vector<double> om = sc.table_omega;
      for (double& v : om) v /= om_ref;
      try {
        w.medium = make_table(std::move(om), sc.table_n, 1.0);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
      break;
    }
    case MediumKind::overrides: w.medium = nullptr; break;
  }

  if (w.medium) {
    try {
      w.params = dispersion_params(*w.medium, w.spec);
    } catch (const Error& e) {
      throw ConfigError(std::string("dispersion parameters: ") + e.what());
    }
    if (sc.override_r && std::abs(*sc.override_r - w.params.r) > 1e-6)
      throw ConfigError("override r disagrees with the medium-derived value");
    if (sc.override_vg_over_vp &&
        std::abs(*sc.override_vg_over_vp - w.params.vg / w.params.vp) > 1e-6)
      throw ConfigError("override vg_over_vp disagrees with the medium-derived value");
  } else {
    w.params = beam_params_overrides(w.spec, *sc.override_r, *sc.override_vg_over_vp, 1.0);
  }
  return w;
}

// ---------------------------------------------------------------------------
// emitters

const char* kUnitsNote = "nondimensional units: x in 1/k0, t in 1/(c k0), c = 1";

void write_beam_params_csv(const std::filesystem::path& path, const Workset& w, double t_max) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  out << "# " << kUnitsNote << "\n";
  out << "# t,w,inv_R,phi,S0,A_mag\n";
  const int npts = 257;
  for (int i = 0; i < npts; ++i) {
    const double t = t_max * i / (npts - 1);
    BeamState st = propagate_closed_form(w.spec, w.params, t);
    out << fmt_g17(t) << "," << fmt_g17(st.w) << "," << fmt_g17(st.inv_r) << ","
        << fmt_g17(st.phi) << "," << fmt_g17(st.s0) << "," << fmt_g17(st.a_mag) << "\n";
  }
}

void write_rays_csv(const std::filesystem::path& path, const Workset& w, double t_max,
                    double ode_tol) {
  // space-time reference ray: x = (x, ct), k = (k, -omega/c), c = 1
  DispersionModel model;
  model.dim = 2;
  if (w.medium) {
    auto med = w.medium;
    model.value = [med](const Vec& k, const Vec&) {
      const double om = -k[1];
      const double nn = med->n(om);
      return k[0] * k[0] - om * om * nn * nn;
    };
    model.gradient = [med](const Vec& k, const Vec&, Vec& dk, Vec& dx) {
      const double om = -k[1];
      // dD/dk2 = dD/domega * domega/dk2 = -d_omega(omega)
      dk = {2.0 * k[0], -med->d_omega(om)};
      dx = {0.0, 0.0};
    };
    model.hessian = [med](const Vec& k, const Vec&, std::vector<double>& kk,
                          std::vector<double>& kx, std::vector<double>& xx) {
      const double om = -k[1];
      kk = {2.0, 0.0, 0.0, med->d_omega2(om) * -1.0 * -1.0};
      kx.assign(4, 0.0);
      xx.assign(4, 0.0);
    };
  } else {
    // overrides: carrier point kinematics, straight space-time ray
    const double vg = w.params.vg, om0 = w.params.omega0;
    model.value = [vg, om0](const Vec& k, const Vec&) {
      // quadratic normal form around the carrier with the right group slope
      const double om = -k[1];
      return k[0] * k[0] - (om0 * om0 + 2.0 * om0 / vg * (om - om0));
    };
    model.gradient = [vg, om0](const Vec& k, const Vec&, Vec& dk, Vec& dx) {
      (void)om0;
      dk = {2.0 * k[0], 2.0 * om0 / vg};
      dx = {0.0, 0.0};
    };
    model.hessian = [](const Vec&, const Vec&, std::vector<double>& kk, std::vector<double>& kx,
                       std::vector<double>& xx) {
      kk = {2.0, 0.0, 0.0, 0.0};
      kx.assign(4, 0.0);
      xx.assign(4, 0.0);
    };
  }

  const Vec x0{0.0, 0.0};
  const Vec k0{w.spec.k0, -w.params.omega0};
  Vec gk, gx;
  model.grad(k0, x0, gk, gx);
  const double ct_rate = gk[1];  // d(ct)/dtau
  if (ct_rate <= 0.0) throw Error("rays: reference ray does not advance in time");
  const double tau_end = (t_max > 0.0) ? t_max / ct_rate : 0.0;

  TraceOptions topt;
  topt.rtol = ode_tol;
  topt.h_max = (tau_end > 0.0) ? tau_end / 64.0 : 0.0;
  Ray ray = trace_ray(model, x0, k0, 0.0, tau_end, topt);
  Ray t = transport_amplitude(ray, nullptr);

  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  out << "# " << kUnitsNote << "\n";
  out << "# tau,x,ct,k,k_t,S,A2\n";
  for (const auto& s : t.samples)
    out << fmt_g17(s.tau) << "," << fmt_g17(s.x[0]) << "," << fmt_g17(s.x[1]) << ","
        << fmt_g17(s.k[0]) << "," << fmt_g17(s.k[1]) << "," << fmt_g17(s.S) << ","
        << fmt_g17(std::exp(s.logA2)) << "\n";
}

void write_wigner_csv(const std::filesystem::path& path, const WignerState& st) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  out << "# " << kUnitsNote << "\n";
  out << "# x,k,W\n";
  for (const auto& s : st.samples)
    out << fmt_g17(s.x[0]) << "," << fmt_g17(s.k[0]) << "," << fmt_g17(s.w) << "\n";
}

json parametrix_report(const Workset& w, std::uint64_t seed) {
  ColdPlasmaMedium plasma;
  const double ramp = (w.omega_pe > 0.0) ? w.omega_pe_ramp / w.omega_pe : 0.0;
  plasma.omega_pe = ramp_profile(w.omega_pe, ramp);
  plasma.nu = constant_profile(w.nu);
  plasma.c = 1.0;
  plasma.validate(-1.0, 1.0, -1.0, 1.0);

  auto q = ohms_law_series(plasma);
  auto p = build_parametrix(q, 2);
  auto eps = dielectric_symbol(plasma, 2);

  ProbeRng rng(seed);
  json probes = json::array();
  double max_p1 = 0.0, max_p2 = 0.0, max_eps = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double om = rng.uniform(2.0, 10.0) * std::max(w.omega_pe, 1.0);
    const double r = rng.uniform_sym(1.0);
    const double t = rng.uniform_sym(1.0);
    const Cplx p1 = eval_spacetime(p.terms[0], om, r, t);
    const Cplx p2 = eval_spacetime(p.terms[1], om, r, t);
    const Cplx ev = eval_spacetime(eps, om, r, t);

    const double wpe = plasma.omega_pe(r, t);
    const double wpe_t = plasma.omega_pe.d(0, 1, r, t);
    const double nu = plasma.nu(r, t);
    const Cplx u(om, nu);
    const Cplx want1 = kImag * wpe * wpe / (4.0 * kPi * u);
    const Cplx want2 = wpe * wpe / (4.0 * kPi * u * u) * (2.0 / wpe * wpe_t - nu);
    const Cplx wante =
        1.0 - wpe * wpe / (u * u) * (1.0 - 2.0 * kImag / u * (2.0 / wpe * wpe_t - nu));
    max_p1 = std::max(max_p1, std::abs(p1 - want1) / std::abs(want1));
    max_p2 = std::max(max_p2, std::abs(p2 - want2) / std::abs(want2));
    max_eps = std::max(max_eps, std::abs(ev - wante) / std::abs(wante));

    probes.push_back(json{{"omega", om},
                          {"r", r},
                          {"t", t},
                          {"p1_re", p1.real()},
                          {"p1_im", p1.imag()},
                          {"p2_re", p2.real()},
                          {"p2_im", p2.imag()},
                          {"eps_re", ev.real()},
                          {"eps_im", ev.imag()}});
  }
  return json{{"units", kUnitsNote},
              {"omega_pe", w.omega_pe},
              {"omega_pe_ramp", w.omega_pe_ramp},
              {"nu", w.nu},
              {"probes", probes},
              {"max_rel_err_p1", max_p1},
              {"max_rel_err_p2", max_p2},
              {"max_rel_err_eps", max_eps}};
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Scenario parse_scenario_string(const std::string& text) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  return parse_scenario_json(cfg);
}

Scenario parse_scenario_file(const std::filesystem::path& config_path) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot read config: " + config_path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario_string(text);
}

int run_scenario(const Scenario& sc, const std::string& config_echo,
                 const std::filesystem::path& out_dir) {
  Workset w = build_workset(sc);
  std::filesystem::create_directories(out_dir);

  const double t_max = w.times.empty() ? 0.0 : w.times.back();
  json timings;

  const bool want_beam = w.has_analysis(sc, "beam");
  const bool want_oracle = w.has_analysis(sc, "oracle");
  const bool want_compare = w.has_analysis(sc, "compare");
  const bool want_rays = w.has_analysis(sc, "rays");
  const bool want_wigner = w.has_analysis(sc, "wigner");
  const bool want_parametrix = w.has_analysis(sc, "parametrix");

  if ((want_beam || want_oracle || want_compare || want_wigner) && w.times.empty())
    throw ConfigError("the requested analyses need a nonempty 'times' list");
  if ((want_oracle || want_compare) && !w.medium)
    throw ConfigError("oracle/compare need a dispersive medium, not overrides");
  if (want_parametrix && sc.medium_kind != MediumKind::cold_plasma)
    throw ConfigError("parametrix analysis needs a cold_plasma medium");

  // shared grid for field emission
  GridSpec grid{};
  const bool need_grid = want_beam || want_oracle || want_compare;
  if (need_grid) {
    grid = oracle_grid(w.spec, w.params, std::max(t_max, 1e-12), sc.grid_margin);
    if (sc.grid_m > 0) {
      if (!is_power_of_two(sc.grid_m)) throw ConfigError("grid.M must be a power of two");
      if (sc.grid_m < grid.m)
        throw ConfigError("grid.M too small for the requested span (needs >= " +
                          std::to_string(grid.m) + ")");
      const double lo = grid.x_min, hi = grid.x_min + grid.m * grid.dx;
      grid.m = sc.grid_m;
      grid.dx = (hi - lo) / grid.m;
    }
  }

  std::vector<GridField> beam_fields, oracle_fields;

  if (want_beam) {
    Stopwatch sw;
    write_beam_params_csv(out_dir / "beam_params.csv", w, t_max);
    for (std::size_t i = 0; i < w.times.size(); ++i) {
      BeamState st = propagate_closed_form(w.spec, w.params, w.times[i]);
      GridField f = beam_field_on_grid(st, w.spec, grid);
      write_field_csv(out_dir / ("field_t" + std::to_string(i) + ".csv"), f, kUnitsNote);
      beam_fields.push_back(std::move(f));
    }
    timings["beam"] = sw.ms();
  }

  if (want_oracle || want_compare) {
    Stopwatch sw;
    SpectralPropagator prop(train_initial_field(w.spec, grid), w.medium);
    for (std::size_t i = 0; i < w.times.size(); ++i) {
      GridField f = prop.at(w.times[i]);
      if (want_oracle)
        write_field_csv(out_dir / ("oracle_t" + std::to_string(i) + ".csv"), f, kUnitsNote);
      oracle_fields.push_back(std::move(f));
    }
    timings["oracle"] = sw.ms();
  }

  if (want_compare) {
    Stopwatch sw;
    if (beam_fields.empty()) {  // 'beam' emission was not requested
      for (double t : w.times) {
        BeamState st = propagate_closed_form(w.spec, w.params, t);
        beam_fields.push_back(beam_field_on_grid(st, w.spec, grid));
      }
    }
    json entries = json::array();
    for (std::size_t i = 0; i < w.times.size(); ++i) {
      FieldComparison cmp = compare_fields(oracle_fields[i], beam_fields[i]);
      entries.push_back(json{{"t", w.times[i]},
                             {"l2_rel", cmp.l2_rel},
                             {"linf_rel", cmp.linf_rel},
                             {"width_oracle", cmp.width_a},
                             {"width_beam", cmp.width_b},
                             {"peak_shift", cmp.peak_shift}});
    }
    std::ofstream out(out_dir / "compare.json");
    out << json{{"units", kUnitsNote}, {"entries", entries}}.dump(2) << "\n";
    timings["compare"] = sw.ms();
  }

  if (want_rays) {
    Stopwatch sw;
    write_rays_csv(out_dir / "rays.csv", w, t_max, sc.ode_tol);
    timings["rays"] = sw.ms();
  }

  if (want_wigner) {
    Stopwatch sw;
    DispersionModel model;
    model.dim = 1;
    if (w.medium) {
      auto med = w.medium;
      model.value = [med](const Vec& k, const Vec&) { return med->omega_root(std::abs(k[0])); };
      model.gradient = [med](const Vec& k, const Vec&, Vec& dk, Vec& dx) {
        const double om = med->omega_root(std::abs(k[0]));
        dk = {med->group_velocity(k[0], om)};
        dx = {0.0};
      };
    } else {
      ReducedHamiltonian h = reduced_from_params(w.params, w.spec.k0);
      model.value = [h](const Vec& k, const Vec& x) { return h.omega(k[0], x[0]); };
      model.gradient = [h](const Vec& k, const Vec& x, Vec& dk, Vec& dx) {
        dk = {h.d_k(k[0], x[0])};
        dx = {0.0};
      };
    }
    WignerOptions opt;
    opt.rtol = sc.ode_tol;
    opt.check_shell = false;  // reduced single-time picture

    WignerState st = seed_gaussian_train(w.spec.a0, w.spec.w0, w.spec.k0, 0.0, 72, 72);
    st.shell_tol = sc.shell_tol;
    double t_prev = 0.0;
    for (std::size_t i = 0; i < w.times.size(); ++i) {
      if (w.times[i] > t_prev) {
        st = evolve_wigner(model, nullptr, st, t_prev, w.times[i], opt);
        t_prev = w.times[i];
      }
      write_wigner_csv(out_dir / ("wigner_t" + std::to_string(i) + ".csv"), st);
    }
    timings["wigner"] = sw.ms();
  }

  if (want_parametrix) {
    Stopwatch sw;
    std::ofstream out(out_dir / "parametrix.json");
    out << parametrix_report(w, sc.probe_seed).dump(2) << "\n";
    timings["parametrix"] = sw.ms();
  }

  // manifest (timing values vary run to run; everything else is deterministic)
  json manifest;
  manifest["version"] = kVersion;
  manifest["units"] = kUnitsNote;
  manifest["config"] = json::parse(config_echo);
  manifest["nondimensional"] = json{{"k0w0", w.spec.w0},
                                    {"omega0", w.params.omega0},
                                    {"vg", w.params.vg},
                                    {"vp", w.params.vp},
                                    {"r", w.params.r}};
  if (need_grid)
    manifest["grid"] = json{{"M", grid.m}, {"x_min", grid.x_min}, {"dx", grid.dx}};
  manifest["wall_ms"] = timings;
  std::ofstream mf(out_dir / "run.json");
  mf << manifest.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<double>> read_csv_columns(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing artifact: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t next = line.find(',', pos);
      const std::string tok = line.substr(pos, next == std::string::npos ? next : next - pos);
      // strtod instead of stod: subnormal field tails must parse, not throw
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str()) throw IoError("malformed CSV value in " + path.string());
      row.push_back(v);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_two_column(const std::filesystem::path& path,
                      const std::vector<std::pair<double, double>>& data) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  for (const auto& [a, b] : data) out << fmt_g17(a) << " " << fmt_g17(b) << "\n";
}

}  // namespace

int emit_plot_data(const std::filesystem::path& run_dir) {
  const auto manifest_path = run_dir / "run.json";
  std::ifstream mf(manifest_path);
  if (!mf) throw IoError("missing artifact: " + manifest_path.string());
  json manifest = json::parse(mf);
  const double w0_hat = manifest["nondimensional"]["k0w0"].get<double>();

  int emitted = 0;
  if (std::filesystem::exists(run_dir / "beam_params.csv")) {
    auto rows = read_csv_columns(run_dir / "beam_params.csv");
    std::vector<std::pair<double, double>> width, gouy;
    for (const auto& r : rows) {
      width.emplace_back(r[0], r[1] / w0_hat);
      gouy.emplace_back(r[0], r[3]);
    }
    write_two_column(run_dir / "plot_width.txt", width);
    write_two_column(run_dir / "plot_gouy.txt", gouy);
    emitted += 2;
  }
  for (int i = 0;; ++i) {
    const auto f = run_dir / ("field_t" + std::to_string(i) + ".csv");
    if (!std::filesystem::exists(f)) break;
    auto rows = read_csv_columns(f);
    std::vector<std::pair<double, double>> sec;
    for (const auto& r : rows) sec.emplace_back(r[0], r[1]);
    write_two_column(run_dir / ("plot_field_t" + std::to_string(i) + ".txt"), sec);
    ++emitted;
  }
  if (std::filesystem::exists(run_dir / "rays.csv")) {
    auto rows = read_csv_columns(run_dir / "rays.csv");
    std::vector<std::pair<double, double>> xt;
    for (const auto& r : rows) xt.emplace_back(r[1], r[2]);  // (x, ct), c = 1
    write_two_column(run_dir / "plot_ray.txt", xt);
    ++emitted;
  }
  (void)emitted;
  return 0;
}

// ---------------------------------------------------------------------------

int selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  try {
    // left product rule against the operator composition on one pair
    Poly a = Poly::variable(2, 0) * Poly::variable(2, 0);
    Poly b = Poly::variable(2, 1) * Poly::variable(2, 1);
    auto c = compose_left(ReducedSymbol::from_poly(1, 2.0, 1.0, 1.0, 0.0, a),
                          ReducedSymbol::from_poly(1, 0.0, 1.0, 1.0, 0.0, b), 3);
    const Cplx got = c.eval(Vec{1.3}, Vec{0.7}).scalar_value();
    const Cplx want = Cplx(1.3 * 1.3 * 0.7 * 0.7 - 2.0, -4.0 * 1.3 * 0.7);
    check("compose_left polynomial exactness", std::abs(got - want) < 1e-12);

    // parametrix closed form at one probe
    ColdPlasmaMedium plasma;
    plasma.omega_pe = ramp_profile(1.0, 0.05);
    plasma.nu = constant_profile(1e-3);
    auto p = build_parametrix(ohms_law_series(plasma), 2);
    const Cplx u(4.0, 1e-3);
    const Cplx p1 = eval_spacetime(p.terms[0], 4.0, 0.2, 0.1);
    check("parametrix leading closed form",
          std::abs(p1 - kImag * plasma.omega_pe(0.2, 0.1) * plasma.omega_pe(0.2, 0.1) /
                            (4.0 * kPi * u)) < 1e-10);

    // ray Hamiltonian drift
    DispersionModel m;
    m.dim = 1;
    m.value = [](const Vec& k, const Vec& x) { return 0.5 * k[0] * k[0] + 0.3 * std::sin(x[0]); };
    const double x0 = -1.0, k0 = std::sqrt(-2.0 * 0.3 * std::sin(-1.0));
    Ray r = trace_ray(m, Vec{x0}, Vec{k0}, 0.0, 10.0);
    double drift = 0.0;
    for (const auto& s : r.samples) drift = std::max(drift, std::abs(m.value(s.k, s.x)));
    check("ray Hamiltonian drift", drift < 1e-6);
    bool liouville = true;
    for (const auto& s : r.samples) liouville = liouville && std::abs(monodromy_det(s) - 1.0) < 1e-6;
    check("ray monodromy determinant", liouville);

    // beam closed-form identities
    TrainSpec sp;
    sp.a0 = 1.0;
    sp.w0 = 20.0;
    sp.k0 = 1.0;
    BeamParams bp = beam_params_overrides(sp, 0.2, 0.8, 1.0);
    bool energy = true, width = true;
    for (double t : {0.0, 100.0, 1000.0}) {
      BeamState st = propagate_closed_form(sp, bp, t);
      energy = energy && std::abs(st.a_mag * st.a_mag * st.w - sp.w0) < 1e-12 * sp.w0;
      const double zeta = 2.0 * 0.8 * 0.8 * t / (sp.w0 * sp.w0);
      width = width && std::abs((st.w / sp.w0) * (st.w / sp.w0) - zeta * zeta - 1.0) < 1e-12;
    }
    check("beam energy conservation", energy);
    check("beam hyperbolic width identity", width);

    // oracle spectral mass conservation
    auto cp = make_cold_plasma(1.0);
    BeamParams pc = dispersion_params(*cp, sp);
    GridSpec g = oracle_grid(sp, pc, 100.0);
    SpectralPropagator prop(train_initial_field(sp, g), cp);
    GridField f = prop.at(100.0);
    std::vector<Cplx> spec = f.samples;
    fft_pow2(spec, false);
    double mass1 = 0.0;
    for (int i = 1; i < g.m / 2; ++i) mass1 += std::norm(spec[static_cast<std::size_t>(i)]);
    check("oracle spectral mass conservation",
          std::abs(mass1 - prop.spectral_mass()) < 1e-12 * prop.spectral_mass());

    // Wigner mass conservation
    WignerState st = seed_gaussian_train(1.0, 20.0, 1.0, 0.0, 24, 24);
    DispersionModel red;
    red.dim = 1;
    red.value = [](const Vec& k, const Vec&) { return std::sqrt(1.0 + k[0] * k[0]); };
    WignerOptions wopt;
    wopt.check_shell = false;
    WignerState evolved = evolve_wigner(red, nullptr, st, 0.0, 50.0, wopt);
    check("wigner mass conservation",
          std::abs(wigner_mass(evolved) - wigner_mass(st)) < 1e-9 * wigner_mass(st));
  } catch (const std::exception& e) {
    out << "FAIL exception: " << e.what() << "\n";
    ++failures;
  }

  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace wavekit
