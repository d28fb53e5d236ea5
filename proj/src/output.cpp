#include "lbsolid/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lbsolid/oracles.hpp"

namespace lbsolid {

namespace {

std::string g17(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
  if (!out) throw io_error("cannot open for writing: " + path);
  return out;
}

void close_checked(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace

void write_probe_csv(const ProbeSeries& series, const std::string& path) {
  auto out = open_out(path);
  out << "t";
  for (const auto& name : series.names) {
    out << ',' << name << "_u1," << name << "_u2," << name << "_s11," << name
        << "_s12," << name << "_s22";
  }
  out << '\n';
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    out << g17(series.t[k]);
    for (std::size_t q = 0; q < series.names.size(); ++q) {
      const ProbeRecord& rec = series.samples[q][k];
      out << ',' << g17(rec.u[0]) << ',' << g17(rec.u[1]) << ','
          << g17(rec.sigma.a11) << ',' << g17(rec.sigma.a12) << ','
          << g17(rec.sigma.a22);
    }
    out << '\n';
  }
  close_checked(out, path);
}

void write_energy_csv(const EnergySeries& series, const std::string& path) {
  auto out = open_out(path);
  out << "t,work_external,energy_kinetic,energy_strain\n";
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    out << g17(series.t[k]) << ',' << g17(series.work_external[k]) << ','
        << g17(series.energy_kinetic[k]) << ',' << g17(series.energy_strain[k])
        << '\n';
  }
  close_checked(out, path);
}

EnergySeries read_energy_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open energy series: " + path);
  EnergySeries series;
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,work_external", 0) != 0)
    throw io_error("not an energy series file: " + path);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    Real vals[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(row, cell, ','))
        throw io_error("malformed energy series row in " + path);
      vals[c] = std::stod(cell);
    }
    series.t.push_back(vals[0]);
    series.work_external.push_back(vals[1]);
    series.energy_kinetic.push_back(vals[2]);
    series.energy_strain.push_back(vals[3]);
  }
  return series;
}

void write_vtk(const Solver& solver, const std::string& path) {
  const Grid& g = solver.grid();
  auto out = open_out(path);
  const int n = g.size();
  out << "# vtk DataFile Version 3.0\n";
  out << "lbsolid snapshot t=" << g17(solver.time()) << "\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.n1 << ' ' << g.n2 << " 1\n";
  out << "ORIGIN " << g17(g.origin[0] + g.dx / 2) << ' '
      << g17(g.origin[1] + g.dx / 2) << " 0\n";
  out << "SPACING " << g17(g.dx) << ' ' << g17(g.dx) << " 1\n";
  out << "POINT_DATA " << n << "\n";

  const auto& mech = solver.mechanics();
  const auto& kin = solver.kinetics();

  auto vectors = [&](const char* name, const std::vector<Vec2>& field) {
    out << "VECTORS " << name << " double\n";
    for (int s = 0; s < n; ++s) {
      if (g.is_solid(s))
        out << g17(field[s][0]) << ' ' << g17(field[s][1]) << " 0\n";
      else
        out << "0 0 0\n";
    }
  };
  auto scalars = [&](const char* name, auto&& value) {
    out << "SCALARS " << name << " double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int s = 0; s < n; ++s) out << g17(g.is_solid(s) ? value(s) : 0) << '\n';
  };

  vectors("displacement", mech.u);
  vectors("momentum_density", kin.jbar);
  scalars("sigma_11", [&](int s) { return mech.sigma[s].a11; });
  scalars("sigma_22", [&](int s) { return mech.sigma[s].a22; });
  scalars("sigma_12", [&](int s) { return mech.sigma[s].a12; });
  scalars("strain_energy_density", [&](int s) { return mech.energy_density[s]; });
  // blanking mask: 1 in the material, 0 in the hole
  out << "SCALARS solid_mask int 1\n";
  out << "LOOKUP_TABLE default\n";
  for (int s = 0; s < n; ++s) out << (g.is_solid(s) ? 1 : 0) << '\n';
  close_checked(out, path);
}

void write_manifest(const Scenario& sc, const Config& cfg, const std::string& path) {
  Json j;
  j["scenario"] = sc.name;
  j["config"] = config_to_json(cfg);
  Json d;
  d["dt"] = sc.params.dt;
  d["tau_bar"] = sc.params.tau_bar;
  d["steps"] = sc.step_count();
  d["sites_total"] = sc.grid.size();
  d["sites_solid"] = static_cast<std::int64_t>(sc.grid.solid_sites.size());
  d["boundary_links"] = static_cast<std::int64_t>(sc.grid.boundary_links.size());
  d["lattice_speed"] = sc.velocity_set.lattice_speed;
  d["shear_wave_speed"] =
      wave_speed(WaveKind::shear, sc.params.lambda, sc.params.mu, sc.params.rho0);
  d["pressure_wave_speed"] =
      wave_speed(WaveKind::pressure, sc.params.lambda, sc.params.mu, sc.params.rho0);
  j["derived"] = d;
  Json probes = Json::array();
  for (const auto& p : sc.probes) {
    Json q;
    q["name"] = p.name;
    q["requested"] = {p.requested[0], p.requested[1]};
    q["position"] = {p.position[0], p.position[1]};
    q["site"] = {sc.grid.i_of(p.site), sc.grid.j_of(p.site)};
    probes.push_back(q);
  }
  j["probes"] = probes;
  j["format_version"] = 1;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  close_checked(out, path);
}

}  // namespace lbsolid
