#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "lbsolid/config.hpp"
#include "lbsolid/oracles.hpp"
#include "lbsolid/output.hpp"
#include "lbsolid/scenario.hpp"

namespace fs = std::filesystem;
using namespace lbsolid;

namespace {

std::string frame_path(const std::string& dir, std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fields_%06lld.vtk", static_cast<long long>(step));
  return dir + "/" + buf;
}

int cmd_run(const std::string& config_path, std::string out_dir, int threads) {
  Config cfg = load_config(config_path);
  if (!out_dir.empty()) cfg.run.out_dir = out_dir;
  Scenario sc = build_scenario(cfg);

  std::error_code ec;
  fs::create_directories(cfg.run.out_dir, ec);
  if (ec) throw io_error("cannot create output directory: " + cfg.run.out_dir);

  std::cout << "scenario " << sc.name << ": " << sc.grid.n1 << "x" << sc.grid.n2
            << " sites (" << sc.grid.solid_sites.size() << " solid), dt = "
            << sc.params.dt << ", " << sc.step_count() << " steps, threads = "
            << threads << "\n";

  write_manifest(sc, cfg, cfg.run.out_dir + "/manifest.json");

  const std::int64_t n_steps = sc.step_count();
  FrameCallback dump = [&](const Solver& solver, std::int64_t step) {
    if (sc.dump_every > 0 && step % sc.dump_every == 0)
      write_vtk(solver, frame_path(cfg.run.out_dir, step));
    if (step == n_steps)  // final state is always dumped, whatever the cadence
      write_vtk(solver, cfg.run.out_dir + "/fields_final.vtk");
  };
  RunResult res = run(sc, threads, dump);

  write_probe_csv(res.probes, cfg.run.out_dir + "/probes.csv");
  write_energy_csv(res.energy, cfg.run.out_dir + "/energy.csv");
  std::cout << "done: t = " << res.energy.t.back() << ", outputs in "
            << cfg.run.out_dir << "\n";
  return 0;
}

int cmd_validate(const std::string& config_path) {
  Config cfg = load_config(config_path);
  Scenario sc = build_scenario(cfg);
  std::cout << "config ok: scenario " << sc.name << ", dt = " << sc.params.dt
            << ", " << sc.grid.solid_sites.size() << " solid sites, "
            << sc.step_count() << " steps to t_max = " << sc.t_max << "\n";
  return 0;
}

int cmd_presets() {
  for (const auto& name : preset_names()) {
    const Config cfg = make_preset(name);
    const Real dt = derived_timestep(cfg);
    std::string hole;
    if (cfg.geometry.hole_side > 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, ", hole %.4g", cfg.geometry.hole_side);
      hole = buf;
    }
    std::printf("%-16s side %.4g, dx %.4g%s, dt %.6g, t_max %.4g\n", name.c_str(),
                cfg.geometry.side_length, cfg.geometry.dx, hole.c_str(), dt,
                cfg.run.t_max);
  }
  return 0;
}

int cmd_oracle_static(Real traction, Real lambda, Real mu) {
  const auto sol = static_uniaxial(traction, lambda, mu);
  std::printf("traction        %.17g\n", traction);
  std::printf("lambda1         %.17g\n", sol.lambda1);
  std::printf("lambda2         %.17g\n", sol.lambda2);
  std::printf("residual        %.3g\n", sol.residual);
  std::printf("iterations      %d\n", sol.iterations);
  std::printf("u2 at top face  %.17g   (= (lambda2 - 1) / 2 on a unit block)\n",
              (sol.lambda2 - 1) / 2);
  return 0;
}

int cmd_oracle_wave(const std::string& kind_name, int sites, Real dx, Real amplitude,
                    const std::string& csv) {
  const WaveKind kind = kind_name == "p" ? WaveKind::pressure : WaveKind::shear;
  std::function<void(Real, Real, Real)> sink;
  std::ofstream out;
  if (!csv.empty()) {
    out.open(csv, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + csv);
    out << "t,u_sim,u_ref\n";
    sink = [&out](Real t, Real u_sim, Real u_ref) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, u_sim, u_ref);
      out << buf;
    };
  }
  const WaveCheck check =
      wave_cross_validation(kind, sites, dx, 1.0, 1.0, 1.0, amplitude, sink);
  std::printf("wave kind       %s\n", kind == WaveKind::pressure ? "pressure" : "shear");
  std::printf("reference speed %.17g\n", check.speed);
  std::printf("arrival (sim)   %.17g\n", check.arrival_sim);
  std::printf("arrival (ref)   %.17g\n", check.arrival_ref);
  std::printf("rel. error      %.3g\n", check.rel_error);
  return 0;
}

int cmd_oracle_energy(const std::string& run_dir, Real t0, Real t1) {
  const EnergySeries series = read_energy_csv(run_dir + "/energy.csv");
  if (series.t.empty()) throw io_error("energy series is empty: " + run_dir);
  if (t1 <= t0) t1 = series.t.back();
  const auto audit = energy_audit(series, t0, t1);
  std::printf("window          [%.6g, %.6g]\n", t0, t1);
  std::printf("max |W - K - U| %.17g\n", audit.max_gap);
  std::printf("max |W_ext|     %.17g\n", audit.max_work);
  std::printf("ratio           %.3g\n", audit.ratio);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Boltzmann solver for transient large-deformation solids"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 1;
  auto* c_run = app.add_subcommand("run", "integrate a scenario and write outputs");
  c_run->add_option("config", config_path, "config JSON path")->required();
  c_run->add_option("--out", out_dir, "output directory (overrides run.out_dir)");
  c_run->add_option("--threads", threads, "worker threads for the compute pipeline")
      ->check(CLI::PositiveNumber);

  std::string validate_path;
  auto* c_val = app.add_subcommand("validate", "parse and check a config, run nothing");
  c_val->add_option("config", validate_path, "config JSON path")->required();

  auto* c_presets = app.add_subcommand("presets", "list built-in scenarios");

  auto* c_oracle = app.add_subcommand("oracle", "independent reference computations");
  c_oracle->require_subcommand(1);

  Real o_traction = 1.0, o_lambda = 1.0, o_mu = 1.0;
  auto* c_static = c_oracle->add_subcommand(
      "static-tension", "static uniaxial stretch for a nominal traction");
  c_static->add_option("--traction,-T", o_traction, "nominal traction")->required();
  c_static->add_option("--lambda", o_lambda, "first Lame parameter");
  c_static->add_option("--mu", o_mu, "shear modulus");

  std::string o_kind = "p", o_csv;
  int o_sites = 200;
  Real o_dx = 0.025, o_amp = 1e-6;
  auto* c_wave = c_oracle->add_subcommand(
      "wave", "small-amplitude pulse vs the linear wave reference");
  c_wave->add_option("--kind", o_kind, "p (pressure) or s (shear)")
      ->check(CLI::IsMember({"p", "s"}));
  c_wave->add_option("--sites", o_sites, "strip length in sites");
  c_wave->add_option("--dx", o_dx, "lattice spacing");
  c_wave->add_option("--amplitude", o_amp, "pulse amplitude");
  c_wave->add_option("--csv", o_csv, "write the probe series here");

  std::string o_run_dir;
  Real o_t0 = 0, o_t1 = 0;
  auto* c_energy = c_oracle->add_subcommand(
      "energy", "audit the energy budget of a finished run");
  c_energy->add_option("--run", o_run_dir, "run output directory")->required();
  c_energy->add_option("--t0", o_t0, "window start");
  c_energy->add_option("--t1", o_t1, "window end (default: end of series)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_run->parsed()) return cmd_run(config_path, out_dir, threads);
    if (c_val->parsed()) return cmd_validate(validate_path);
    if (c_presets->parsed()) return cmd_presets();
    if (c_static->parsed()) return cmd_oracle_static(o_traction, o_lambda, o_mu);
    if (c_wave->parsed()) return cmd_oracle_wave(o_kind, o_sites, o_dx, o_amp, o_csv);
    if (c_energy->parsed()) return cmd_oracle_energy(o_run_dir, o_t0, o_t1);
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
