// Batch front end for the memristor-CNN simulation library: config-driven
// lattice runs, equilibrium tables, device hysteresis traces, two-cell chaos
// trajectories, and the named experiments.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcnn/cell.hpp"
#include "mcnn/chaos.hpp"
#include "mcnn/config.hpp"
#include "mcnn/csv.hpp"
#include "mcnn/image_io.hpp"
#include "mcnn/protocols.hpp"

namespace fs = std::filesystem;
using namespace mcnn;

namespace {

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", t);
  return std::string(buf);
}

void write_outputs(const fs::path& dir, const RunRecord& rec) {
  fs::create_directories(dir);
  for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
    const std::string stem = snapshot_name(rec.snapshot_times[k]);
    write_pgm(decode_output(rec.snapshots[k]), (dir / (stem + ".pgm")).string());
    if (k < rec.snapshot_gate_masks.size())
      write_ppm(gate_mask_image(rec.snapshot_gate_masks[k], rec.snapshots[k].width,
                                rec.snapshots[k].height),
                (dir / (stem + "_gates.ppm")).string());
  }
  write_pgm(decode_output(rec.final_output), (dir / "final.pgm").string());
  if (!rec.final_gate_mask.empty())
    write_ppm(gate_mask_image(rec.final_gate_mask, rec.final_output.width,
                              rec.final_output.height),
              (dir / "final_gates.ppm").string());
}

int cmd_simulate(const std::string& config_path, const std::optional<std::string>& image,
                 const std::optional<std::string>& out,
                 const std::optional<double>& dt_flag,
                 const std::optional<double>& t_end_flag,
                 const std::optional<std::uint64_t>& seed_flag) {
  RunConfig cfg = load_config(config_path);
  if (image) cfg.image_path = *image;
  if (out) cfg.out_dir = *out;
  if (dt_flag) cfg.dt = *dt_flag;
  if (t_end_flag) cfg.t_end = *t_end_flag;
  if (seed_flag) {
    cfg.seed = *seed_flag;
    for (auto& e : cfg.script.events)
      if (auto* fd = std::get_if<FluxDecayEvent>(&e)) fd->seed = cfg.seed;
  }
  if (!(cfg.dt > 0.0)) throw std::runtime_error("dt must be positive");
  if (!cfg.t_end) throw std::runtime_error("config is missing t_end");
  if (cfg.image_path.empty()) throw std::runtime_error("config is missing an image");

  const Image input = encode_image(read_pgm(cfg.image_path));
  GridState grid = grid_from_config(cfg, input);

  RunOptions opts;
  opts.snapshot_times = cfg.snapshot_times;
  RunRecord rec = run(std::move(grid), cfg.script, *cfg.t_end, cfg.dt, opts);

  const fs::path dir(cfg.out_dir);
  write_outputs(dir, rec);
  auto manifest = manifest_entries(cfg);
  for (const auto& w : rec.warnings) manifest.emplace_back("warning", w);
  write_manifest((dir / "manifest.txt").string(), manifest);
  return 0;
}

int cmd_equilibria(double a, double bias) {
  const DrivingPoint dp{a, bias};
  for (const auto& eq : driving_point_equilibria(dp))
    std::printf("v=%.12g  %s\n", eq.v, to_string(eq.stability));
  return 0;
}

MemductanceProfile profile_from_flags(const std::string& kind, double lo, double hi,
                                      double on, bool lo_open, bool hi_open, double inner,
                                      double outer, double alpha, double beta,
                                      double band_a, double band_b) {
  if (kind == "window") return MemductanceProfile::window(lo, hi, on, !lo_open, !hi_open);
  if (kind == "twin-peak") return MemductanceProfile::twin_peak(inner, outer);
  if (kind == "ramp-store") return MemductanceProfile::ramp_store();
  if (kind == "wave-band") return MemductanceProfile::wave_band(alpha, beta, band_a, band_b);
  throw std::runtime_error("unknown profile kind '" + kind + "'");
}

int cmd_hysteresis(const MemductanceProfile& profile, double omega, double t_end,
                   double dt, const std::string& out) {
  const auto series = hysteresis_trace(profile, omega, t_end, dt);
  std::vector<std::vector<double>> rows;
  rows.reserve(series.size());
  for (const auto& s : series)
    rows.push_back({s.t, s.v, s.flux, s.conductance, s.current});
  write_csv(out, {"t", "v", "phi", "W", "i"}, rows);
  return 0;
}

int cmd_chaos(const std::string& system, double t_end, double dt, bool poincare,
              bool power, const std::string& out_dir) {
  const bool memristor = system == "memristor";
  if (!memristor && system != "reference")
    throw std::runtime_error("system must be 'reference' or 'memristor'");
  fs::create_directories(out_dir);
  const Trajectory traj =
      memristor ? simulate_memristor_coupled(t_end, dt) : simulate_reference(t_end, dt);

  std::vector<std::vector<double>> rows;
  rows.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    if (memristor)
      rows.push_back({s.t, s.v1, s.v2, s.flux_a, s.flux_b});
    else
      rows.push_back({s.t, s.v1, s.v2});
  }
  const fs::path dir(out_dir);
  write_csv((dir / "trajectory.csv").string(),
            memristor ? std::vector<std::string>{"t", "v1", "v2", "phi_a", "phi_b"}
                      : std::vector<std::string>{"t", "v1", "v2"},
            rows);

  if (poincare) {
    const auto section =
        poincare_section(traj, memristor ? memristor_drive() : reference_drive());
    std::vector<std::vector<double>> pts;
    pts.reserve(section.size());
    for (const auto& s : section) pts.push_back({s[0], s[1]});
    write_csv((dir / "poincare.csv").string(), {"v1", "v2"}, pts);
  }
  if (power) {
    const auto series = power_series(traj);
    std::vector<std::vector<double>> ps;
    ps.reserve(series.size());
    for (const auto& s : series) ps.push_back({s.t, s.p_a, s.p_b});
    write_csv((dir / "power.csv").string(), {"t", "p_a", "p_b"}, ps);
  }
  return 0;
}

int cmd_templates() {
  for (TemplateName name : all_template_names()) {
    const NamedTemplate nt = builtin_template(name);
    std::printf("%s\n", to_string(name));
    std::printf("  A =");
    for (int k = 0; k < 9; ++k) std::printf(" %g", nt.tmpl.feedback[k]);
    std::printf("\n  B =");
    for (int k = 0; k < 9; ++k) std::printf(" %g", nt.tmpl.control[k]);
    std::printf("\n  z = %g\n", nt.tmpl.threshold);
    std::printf("  init = %s, boundary = (%g, %g)\n", to_string(nt.init),
                nt.boundary.state_v, nt.boundary.input_u);
  }
  return 0;
}

void append_common(std::vector<std::pair<std::string, std::string>>& m,
                   const std::string& image, double dt, std::uint64_t seed) {
  m.emplace_back("image", image);
  m.emplace_back("dt", format_double(dt));
  m.emplace_back("seed", std::to_string(seed));
}

int cmd_image_hold(const std::string& tmpl, const std::string& image_path,
                   const std::string& out_dir, double t_off, double t_end, double dt,
                   std::uint64_t seed) {
  const TemplateName name = template_name_from_string(tmpl);
  const Image input = encode_image(read_pgm(image_path));
  const ImageHoldResult r = image_holding_run(name, input, t_off, t_end, dt);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_pgm(decode_output(r.y_before), (dir / "before.pgm").string());
  write_pgm(decode_output(r.y_after), (dir / "after.pgm").string());
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("experiment", "image-hold");
  m.emplace_back("template", tmpl);
  append_common(m, image_path, dt, seed);
  m.emplace_back("t_off", format_double(t_off));
  m.emplace_back("t_end", format_double(t_end));
  m.emplace_back("held", r.held ? "true" : "false");
  write_manifest((dir / "manifest.txt").string(), m);
  std::printf("held=%s\n", r.held ? "true" : "false");
  return 0;
}

int cmd_suspend(const std::string& tmpl, const std::string& image_path,
                const std::string& out_dir, double store_t0, double store_duration,
                double recovery_t1, double recovery_duration, double t_end, double dt,
                std::uint64_t seed) {
  const TemplateName name = template_name_from_string(tmpl);
  const Image input = encode_image(read_pgm(image_path));
  const SuspendResumeResult r = suspend_resume_run(
      name, input, store_t0, store_duration, recovery_t1, recovery_duration, t_end, dt);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_pgm(decode_output(r.y_recovered), (dir / "recovered.pgm").string());
  write_pgm(decode_output(r.y_final), (dir / "final.pgm").string());
  write_pgm(decode_output(r.y_uninterrupted), (dir / "uninterrupted.pgm").string());
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("experiment", "suspend-resume");
  m.emplace_back("template", tmpl);
  append_common(m, image_path, dt, seed);
  m.emplace_back("store", format_double(store_t0) + " " + format_double(store_duration));
  m.emplace_back("recovery",
                 format_double(recovery_t1) + " " + format_double(recovery_duration));
  m.emplace_back("t_end", format_double(t_end));
  m.emplace_back("match", r.equal ? "true" : "false");
  for (const auto& w : r.warnings) m.emplace_back("warning", w);
  write_manifest((dir / "manifest.txt").string(), m);
  std::printf("match=%s\n", r.equal ? "true" : "false");
  return 0;
}

int cmd_flux_decay(const std::string& tmpl, const std::string& image_path,
                   const std::string& out_dir, double store_t0, double store_duration,
                   double recovery_t1, double recovery_duration, double t_end,
                   double fraction, double epsilon, const std::string& mode_s,
                   std::uint64_t seed, double dt) {
  const TemplateName name = template_name_from_string(tmpl);
  DecaySign mode;
  if (mode_s == "preserve") mode = DecaySign::Preserve;
  else if (mode_s == "flip") mode = DecaySign::Flip;
  else throw std::runtime_error("mode must be 'preserve' or 'flip'");
  const Image input = encode_image(read_pgm(image_path));
  const FluxDecayResult r =
      flux_decay_run(name, input, store_t0, store_duration, recovery_t1,
                     recovery_duration, t_end, fraction, epsilon, mode, seed, dt);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_pgm(decode_output(r.y_final), (dir / "final.pgm").string());
  write_pgm(decode_output(r.y_uninterrupted), (dir / "uninterrupted.pgm").string());
  write_ppm(gate_mask_image(r.decayed_cells, input.width, input.height),
            (dir / "decayed_cells.ppm").string());
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("experiment", "flux-decay");
  m.emplace_back("template", tmpl);
  append_common(m, image_path, dt, seed);
  m.emplace_back("store", format_double(store_t0) + " " + format_double(store_duration));
  m.emplace_back("recovery",
                 format_double(recovery_t1) + " " + format_double(recovery_duration));
  m.emplace_back("t_end", format_double(t_end));
  m.emplace_back("fraction", format_double(fraction));
  m.emplace_back("epsilon", format_double(epsilon));
  m.emplace_back("mode", mode_s);
  m.emplace_back("match", r.match ? "true" : "false");
  for (const auto& w : r.warnings) m.emplace_back("warning", w);
  write_manifest((dir / "manifest.txt").string(), m);
  std::printf("match=%s\n", r.match ? "true" : "false");
  return 0;
}

int cmd_parasitic(const std::string& tmpl, const std::string& image_path,
                  const std::string& out_dir, double g, double t_end, double dt,
                  std::uint64_t seed) {
  const TemplateName name = template_name_from_string(tmpl);
  const Image input = encode_image(read_pgm(image_path));
  const ParasiticResult r = parasitic_comparison(name, input, g, t_end, dt);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_pgm(decode_output(r.y_with_g), (dir / "with_g.pgm").string());
  write_pgm(decode_output(r.y_without_g), (dir / "without_g.pgm").string());
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("experiment", "parasitic");
  m.emplace_back("template", tmpl);
  append_common(m, image_path, dt, seed);
  m.emplace_back("g", format_double(g));
  m.emplace_back("t_end", format_double(t_end));
  m.emplace_back("identical", r.identical ? "true" : "false");
  write_manifest((dir / "manifest.txt").string(), m);
  std::printf("identical=%s\n", r.identical ? "true" : "false");
  return 0;
}

int cmd_wave(const std::string& image_path, const std::string& out_dir, double alpha,
             double beta, double band_a, double band_b, double t_end,
             std::vector<double> snapshots, double dt, std::uint64_t seed) {
  const Image input = encode_image(read_pgm(image_path));
  const auto band = MemductanceProfile::wave_band(alpha, beta, band_a, band_b);
  const WaveResult r = wave_run(input, band, t_end, snapshots, dt);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_pgm(decode_output(r.y_initial), (dir / "initial.pgm").string());
  for (std::size_t k = 0; k < r.snapshots.size(); ++k)
    write_pgm(decode_output(r.snapshots[k]),
              (dir / (snapshot_name(r.snapshot_times[k]) + ".pgm")).string());
  write_pgm(decode_output(r.y_final), (dir / "final.pgm").string());
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("experiment", "wave");
  append_common(m, image_path, dt, seed);
  m.emplace_back("alpha", format_double(alpha));
  m.emplace_back("beta", format_double(beta));
  m.emplace_back("a", format_double(band_a));
  m.emplace_back("b", format_double(band_b));
  m.emplace_back("t_end", format_double(t_end));
  write_manifest((dir / "manifest.txt").string(), m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memristor cellular neural network simulation suite"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a lattice simulation from a config file");
  std::string sim_config;
  std::optional<std::string> sim_image, sim_out;
  std::optional<double> sim_dt, sim_t_end;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("--config", sim_config, "config file")->required();
  sim->add_option("--image", sim_image, "input PGM (overrides the config)");
  sim->add_option("--out", sim_out, "output directory (overrides the config)");
  sim->add_option("--dt", sim_dt, "time step (overrides the config)");
  sim->add_option("--t-end", sim_t_end, "end time (overrides the config)");
  sim->add_option("--seed", sim_seed, "RNG seed (overrides the config)");

  // equilibria
  auto* eq = app.add_subcommand("equilibria", "isolated-cell equilibria and stability");
  double eq_a = 2.0, eq_bias = 0.0;
  eq->add_option("--a", eq_a, "nonlinear resistor slope a (= a00)")->required();
  eq->add_option("--bias", eq_bias, "constant injected current")->capture_default_str();

  // hysteresis
  auto* hy = app.add_subcommand("hysteresis", "sinusoidally driven device trace (CSV)");
  double hy_omega = 0.2, hy_t_end = 63.0, hy_dt = 1e-3;
  std::string hy_out = "hysteresis.csv", hy_kind = "window";
  double hy_lo = 0.5, hy_hi = 7.0, hy_on = 1.0;
  bool hy_lo_open = true, hy_hi_open = true;
  double hy_inner = 2.0, hy_outer = 10.0;
  double hy_alpha = 1.0, hy_beta = 1.0, hy_band_a = 0.5, hy_band_b = 4000.0;
  hy->add_option("--omega", hy_omega, "drive angular frequency")->capture_default_str();
  hy->add_option("--t-end", hy_t_end, "trace length")->capture_default_str();
  hy->add_option("--dt", hy_dt, "time step")->capture_default_str();
  hy->add_option("--out", hy_out, "output CSV path")->capture_default_str();
  hy->add_option("--profile", hy_kind, "window|twin-peak|ramp-store|wave-band")->capture_default_str();
  hy->add_option("--lo", hy_lo, "window lower edge")->capture_default_str();
  hy->add_option("--hi", hy_hi, "window upper edge")->capture_default_str();
  hy->add_option("--on", hy_on, "window on-value")->capture_default_str();
  hy->add_flag("--lo-closed", [&](std::int64_t) { hy_lo_open = false; },
               "close the lower window edge");
  hy->add_flag("--hi-closed", [&](std::int64_t) { hy_hi_open = false; },
               "close the upper window edge");
  hy->add_option("--inner", hy_inner, "twin-peak inner threshold")->capture_default_str();
  hy->add_option("--outer", hy_outer, "twin-peak outer threshold")->capture_default_str();
  hy->add_option("--alpha", hy_alpha, "wave-band alpha")->capture_default_str();
  hy->add_option("--beta", hy_beta, "wave-band beta")->capture_default_str();
  hy->add_option("--band-a", hy_band_a, "wave-band a")->capture_default_str();
  hy->add_option("--band-b", hy_band_b, "wave-band b")->capture_default_str();

  // chaos
  auto* ch = app.add_subcommand("chaos", "two-cell chaotic systems (CSV outputs)");
  std::string ch_system, ch_out = ".";
  double ch_t_end = 3000.0, ch_dt = 1e-3;
  bool ch_poincare = false, ch_power = false;
  ch->add_option("--system", ch_system, "reference|memristor")->required();
  ch->add_option("--t-end", ch_t_end, "end time")->capture_default_str();
  ch->add_option("--dt", ch_dt, "time step")->capture_default_str();
  ch->add_flag("--poincare", ch_poincare, "also write the Poincare section");
  ch->add_flag("--power", ch_power, "also write the coupling power series");
  ch->add_option("--out", ch_out, "output directory")->capture_default_str();

  // templates
  auto* tp = app.add_subcommand("templates", "built-in template catalogue");
  bool tp_list = false;
  tp->add_flag("--list", tp_list, "print all built-in templates");

  // experiment
  auto* ex = app.add_subcommand("experiment", "the named experiments");
  ex->require_subcommand(1);
  std::string ex_image, ex_out = "out", ex_tmpl;
  double ex_dt = 0.01;
  std::uint64_t ex_seed = 0;

  auto* ih = ex->add_subcommand("image-hold", "binary output holding after switch-off");
  double ih_t_off = 80.0, ih_t_end = 150.0;
  ih->add_option("--template", ex_tmpl, "task template")->required();
  ih->add_option("--image", ex_image, "input PGM")->required();
  ih->add_option("--out", ex_out, "output directory")->capture_default_str();
  ih->add_option("--t-off", ih_t_off, "switch-off / comparison time")->capture_default_str();
  ih->add_option("--t-end", ih_t_end, "end time")->capture_default_str();
  ih->add_option("--dt", ex_dt, "time step")->capture_default_str();
  ih->add_option("--seed", ex_seed, "recorded in the manifest")->capture_default_str();

  auto* sr = ex->add_subcommand("hole-filling-suspend",
                                "suspend/resume protocol (default hole-filling)");
  std::string sr_tmpl = "hole-filling";
  double sr_t0 = 60.0, sr_T = 10.0, sr_t1 = 120.0, sr_dur = 10.0, sr_end = 340.0;
  sr->add_option("--template", sr_tmpl, "hole-filling or half-toning")->capture_default_str();
  sr->add_option("--image", ex_image, "input PGM")->required();
  sr->add_option("--out", ex_out, "output directory")->capture_default_str();
  sr->add_option("--store-t0", sr_t0, "store window start")->capture_default_str();
  sr->add_option("--store-duration", sr_T, "store window length")->capture_default_str();
  sr->add_option("--recovery-t1", sr_t1, "recovery start (= power-off end)")->capture_default_str();
  sr->add_option("--recovery-duration", sr_dur, "recovery window length")->capture_default_str();
  sr->add_option("--t-end", sr_end, "end time")->capture_default_str();
  sr->add_option("--dt", ex_dt, "time step")->capture_default_str();
  sr->add_option("--seed", ex_seed, "recorded in the manifest")->capture_default_str();

  auto* fd = ex->add_subcommand("flux-decay", "suspend/resume with flux decay");
  std::string fd_tmpl = "hole-filling", fd_mode = "preserve";
  double fd_t0 = 60.0, fd_T = 10.0, fd_t1 = 120.0, fd_dur = 10.0, fd_end = 340.0;
  double fd_fraction = 0.5, fd_eps = 0.001;
  fd->add_option("--template", fd_tmpl, "hole-filling or half-toning")->capture_default_str();
  fd->add_option("--image", ex_image, "input PGM")->required();
  fd->add_option("--out", ex_out, "output directory")->capture_default_str();
  fd->add_option("--store-t0", fd_t0, "store window start")->capture_default_str();
  fd->add_option("--store-duration", fd_T, "store window length")->capture_default_str();
  fd->add_option("--recovery-t1", fd_t1, "recovery start (= power-off end)")->capture_default_str();
  fd->add_option("--recovery-duration", fd_dur, "recovery window length")->capture_default_str();
  fd->add_option("--t-end", fd_end, "end time")->capture_default_str();
  fd->add_option("--fraction", fd_fraction, "decayed cell fraction")->capture_default_str();
  fd->add_option("--epsilon", fd_eps, "residual flux magnitude")->capture_default_str();
  fd->add_option("--mode", fd_mode, "preserve|flip")->capture_default_str();
  fd->add_option("--seed", ex_seed, "selection RNG seed")->capture_default_str();
  fd->add_option("--dt", ex_dt, "time step")->capture_default_str();

  auto* pa = ex->add_subcommand("parasitic", "parasitic conductance comparison");
  std::string pa_tmpl = "dilation";
  double pa_g = 0.01, pa_end = 20.0;
  pa->add_option("--template", pa_tmpl, "dilation or sharpening")->capture_default_str();
  pa->add_option("--image", ex_image, "input PGM")->required();
  pa->add_option("--out", ex_out, "output directory")->capture_default_str();
  pa->add_option("--g", pa_g, "parasitic conductance")->capture_default_str();
  pa->add_option("--t-end", pa_end, "end time")->capture_default_str();
  pa->add_option("--dt", ex_dt, "time step")->capture_default_str();
  pa->add_option("--seed", ex_seed, "recorded in the manifest")->capture_default_str();

  auto* wv = ex->add_subcommand("wave", "two-dimensional waves (hole-filling template)");
  double wv_alpha = 1.0, wv_beta = 1.0, wv_a = 0.5, wv_b = 4000.0, wv_end = 2000.0;
  std::vector<double> wv_snapshots;
  wv->add_option("--image", ex_image, "binary input PGM")->required();
  wv->add_option("--out", ex_out, "output directory")->capture_default_str();
  wv->add_option("--alpha", wv_alpha, "wave-band alpha")->capture_default_str();
  wv->add_option("--beta", wv_beta, "wave-band beta")->capture_default_str();
  wv->add_option("--band-a", wv_a, "wave-band a")->capture_default_str();
  wv->add_option("--band-b", wv_b, "wave-band b")->capture_default_str();
  wv->add_option("--t-end", wv_end, "end time")->capture_default_str();
  wv->add_option("--snapshots", wv_snapshots, "snapshot times");
  wv->add_option("--dt", ex_dt, "time step")->capture_default_str();
  wv->add_option("--seed", ex_seed, "recorded in the manifest")->capture_default_str();

  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*sim)
      return cmd_simulate(sim_config, sim_image, sim_out, sim_dt, sim_t_end, sim_seed);
    if (*eq) return cmd_equilibria(eq_a, eq_bias);
    if (*hy)
      return cmd_hysteresis(
          profile_from_flags(hy_kind, hy_lo, hy_hi, hy_on, hy_lo_open, hy_hi_open,
                             hy_inner, hy_outer, hy_alpha, hy_beta, hy_band_a, hy_band_b),
          hy_omega, hy_t_end, hy_dt, hy_out);
    if (*ch) return cmd_chaos(ch_system, ch_t_end, ch_dt, ch_poincare, ch_power, ch_out);
    if (*tp) {
      if (!tp_list) {
        std::cerr << "templates: nothing to do (use --list)\n";
        return 2;
      }
      return cmd_templates();
    }
    if (*ex) {
      if (*ih)
        return cmd_image_hold(ex_tmpl, ex_image, ex_out, ih_t_off, ih_t_end, ex_dt,
                              ex_seed);
      if (*sr)
        return cmd_suspend(sr_tmpl, ex_image, ex_out, sr_t0, sr_T, sr_t1, sr_dur, sr_end,
                           ex_dt, ex_seed);
      if (*fd)
        return cmd_flux_decay(fd_tmpl, ex_image, ex_out, fd_t0, fd_T, fd_t1, fd_dur,
                              fd_end, fd_fraction, fd_eps, fd_mode, ex_seed, ex_dt);
      if (*pa)
        return cmd_parasitic(pa_tmpl, ex_image, ex_out, pa_g, pa_end, ex_dt, ex_seed);
      if (*wv)
        return cmd_wave(ex_image, ex_out, wv_alpha, wv_beta, wv_a, wv_b, wv_end,
                        wv_snapshots, ex_dt, ex_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
