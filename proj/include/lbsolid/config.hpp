#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lbsolid/boundary.hpp"
#include "lbsolid/common.hpp"
#include "lbsolid/lattice.hpp"

namespace lbsolid {

using Json = nlohmann::ordered_json;

struct GeometryConfig {
  Real side_length{1};
  Real dx{0.025};
  Real hole_side{0};
};

struct MaterialConfig {
  Real lambda{1};
  Real mu{1};
  Real rho0{1};
};

struct NumericsConfig {
  Real tau_ratio{0.55};              // tau_bar / dt
  bool source_extrapolation{false};  // predicted source in the moment update
  // Boundary data for the wall fill advanced partway into the flight window
  // [t, t + dt] of the filled populations; plain lagged sampling acts like
  // negative damping on wall-grazing waves at large strain.
  bool boundary_prediction{false};
  // Re-evaluate the source from the provisionally updated displacement and
  // correct the momentum shift, so force and moments use the same time
  // level. One extra stress evaluation per step.
  bool corrector{false};
  // Mass-proportional momentum drain (rate, units 1/time), active from
  // damping_onset onward. Spatially uniform, so statics and symmetry are
  // untouched and wave arrival times do not shift; it bleeds off the slow
  // secular growth that large static prestress feeds during long holds.
  Real damping{0};
  Real damping_onset{0};
};

struct RunConfig {
  Real t_max{1};
  int dump_every{0};  // field dump cadence in steps, 0 disables
  std::string out_dir{"out"};
};

struct ProbeConfig {
  std::string name;
  Vec2 position{0, 0};
};

struct BoundaryConfig {
  Edge edge{Edge::left};
  EdgeCondition condition{};
};

/// Fully resolved run description. Parsing expands presets, so consumers
/// never need to know whether a config started as one.
struct Config {
  std::string preset;  // original preset name, empty for explicit configs
  GeometryConfig geometry;
  MaterialConfig material;
  NumericsConfig numerics;
  std::vector<BoundaryConfig> boundaries;
  Vec2 body_force{0, 0};
  std::vector<ProbeConfig> probes;
  RunConfig run;
};

/// Strict parse: unknown keys, bad types, bad enum values and physically
/// invalid numbers are all config errors with the offending field named.
Config parse_config(const std::string& text);

Config load_config(const std::string& path);

Json config_to_json(const Config& cfg);

std::vector<std::string> preset_names();

Config make_preset(const std::string& name);

/// dt implied by the configured lattice spacing and material.
Real derived_timestep(const Config& cfg);

}  // namespace lbsolid
