#pragma once

#include <string>

#include "lbsolid/config.hpp"
#include "lbsolid/scenario.hpp"

namespace lbsolid {

/// Probe time series as CSV: header t,<probe>_u1,..., one row per step,
/// doubles printed with %.17g, LF line endings. Deterministic byte-for-byte
/// across reruns.
void write_probe_csv(const ProbeSeries& series, const std::string& path);

/// Energy ledger as CSV with columns t,work_external,energy_kinetic,
/// energy_strain.
void write_energy_csv(const EnergySeries& series, const std::string& path);

EnergySeries read_energy_csv(const std::string& path);

/// Snapshot of the current fields as legacy ASCII VTK structured points:
/// displacement, momentum density, Cauchy stress components, strain energy
/// density and the solid mask. Void sites carry zeros.
void write_vtk(const Solver& solver, const std::string& path);

/// Resolved configuration plus derived quantities (dt, step count, site
/// counts, wave speeds) and the snapped probe table.
void write_manifest(const Scenario& sc, const Config& cfg, const std::string& path);

}  // namespace lbsolid
