#include "lbsolid/config.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace lbsolid {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw config_error(msg); }

void check_keys(const Json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail("config: unknown key '" + it.key() + "' in " + ctx);
  }
}

const Json& require(const Json& obj, const std::string& ctx, const char* key) {
  if (!obj.contains(key)) fail("config: " + ctx + " is missing required key '" + key + "'");
  return obj.at(key);
}

Real as_real(const Json& v, const std::string& where) {
  if (!v.is_number()) fail("config: " + where + " must be a number");
  const Real x = v.get<Real>();
  if (!std::isfinite(x)) fail("config: " + where + " must be finite");
  return x;
}

Real real_or(const Json& obj, const std::string& ctx, const char* key, Real fallback) {
  return obj.contains(key) ? as_real(obj.at(key), ctx + "." + key) : fallback;
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail("config: " + where + " must be a string");
  return v.get<std::string>();
}

Vec2 as_vec2(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2)
    fail("config: " + where + " must be an array of two numbers");
  return {as_real(v[0], where + "[0]"), as_real(v[1], where + "[1]")};
}

std::optional<Edge> edge_from_name(const std::string& s) {
  for (int e = 0; e < kEdgeCount; ++e) {
    if (s == edge_name(static_cast<Edge>(e))) return static_cast<Edge>(e);
  }
  return std::nullopt;
}

LoadSchedule parse_schedule(const Json& j, const std::string& ctx) {
  if (!j.is_object()) fail("config: " + ctx + " must be an object");
  LoadSchedule s;
  const std::string kind = as_string(require(j, ctx, "kind"), ctx + ".kind");
  s.amplitude = as_real(require(j, ctx, "amplitude"), ctx + ".amplitude");
  if (kind == "constant") {
    check_keys(j, ctx, {"kind", "amplitude"});
    s.kind = LoadSchedule::Kind::constant;
  } else if (kind == "ramp_hold") {
    check_keys(j, ctx, {"kind", "amplitude", "t_ramp"});
    s.kind = LoadSchedule::Kind::ramp_hold;
    s.t_ramp = as_real(require(j, ctx, "t_ramp"), ctx + ".t_ramp");
    if (!(s.t_ramp > 0)) fail("config: " + ctx + ".t_ramp must be positive");
  } else if (kind == "step_hold_release") {
    check_keys(j, ctx, {"kind", "amplitude", "t_release"});
    s.kind = LoadSchedule::Kind::step_hold_release;
    s.t_release = as_real(require(j, ctx, "t_release"), ctx + ".t_release");
    if (s.t_release < 0) fail("config: " + ctx + ".t_release must be non-negative");
  } else {
    fail("config: " + ctx + ".kind must be one of constant, ramp_hold, step_hold_release");
  }
  return s;
}

EdgeCondition parse_edge_condition(const Json& j, const std::string& ctx) {
  if (!j.is_object()) fail("config: " + ctx + " must be an object");
  check_keys(j, ctx, {"type", "schedule", "direction"});
  EdgeCondition ec;
  const std::string type = as_string(require(j, ctx, "type"), ctx + ".type");
  if (type == "traction") {
    ec.type = Condition::neumann;
  } else if (type == "momentum") {
    ec.type = Condition::dirichlet;
  } else {
    fail("config: " + ctx + ".type must be 'traction' or 'momentum'");
  }
  ec.schedule = parse_schedule(require(j, ctx, "schedule"), ctx + ".schedule");
  if (j.contains("direction")) {
    const Json& d = j.at("direction");
    if (d.is_string()) {
      const std::string dir = d.get<std::string>();
      if (dir == "normal") {
        ec.axis = EdgeCondition::Axis::normal;
      } else if (dir == "tangential") {
        ec.axis = EdgeCondition::Axis::tangential;
      } else {
        fail("config: " + ctx + ".direction must be 'normal', 'tangential' or a vector");
      }
    } else {
      ec.axis = EdgeCondition::Axis::vector;
      ec.direction = as_vec2(d, ctx + ".direction");
    }
  }
  return ec;
}

void apply_run_block(const Json& j, RunConfig& run, bool t_max_required) {
  check_keys(j, "run", {"t_max", "dump_every", "out_dir"});
  if (t_max_required || j.contains("t_max"))
    run.t_max = as_real(require(j, "run", "t_max"), "run.t_max");
  if (j.contains("dump_every")) {
    const Json& v = j.at("dump_every");
    if (!v.is_number_integer() || v.get<long long>() < 0)
      fail("config: run.dump_every must be a non-negative integer");
    run.dump_every = static_cast<int>(v.get<long long>());
  }
  if (j.contains("out_dir"))
    run.out_dir = as_string(j.at("out_dir"), "run.out_dir");
}

void validate(const Config& cfg) {
  if (!(cfg.geometry.side_length > 0))
    fail("config: geometry.side_length must be positive");
  if (!(cfg.geometry.dx > 0)) fail("config: geometry.dx must be positive");
  if (cfg.geometry.hole_side < 0) fail("config: geometry.hole_side must be non-negative");
  if (cfg.geometry.hole_side >= cfg.geometry.side_length)
    fail("config: geometry.hole_side must be smaller than side_length");
  if (!(cfg.material.mu > 0)) fail("config: material.mu must be positive");
  if (cfg.material.lambda < 0) fail("config: material.lambda must be non-negative");
  if (!(cfg.material.rho0 > 0)) fail("config: material.rho0 must be positive");
  if (!(cfg.numerics.tau_ratio > 0.5))
    fail("config: numerics.tau_ratio must exceed 0.5");
  if (cfg.numerics.damping < 0)
    fail("config: numerics.damping must be non-negative");
  if (cfg.numerics.damping_onset < 0)
    fail("config: numerics.damping_onset must be non-negative");
  if (!(cfg.run.t_max > 0)) fail("config: run.t_max must be positive");
  std::set<int> seen;
  for (const auto& b : cfg.boundaries) {
    if (!seen.insert(static_cast<int>(b.edge)).second)
      fail(std::string("config: boundary edge '") + edge_name(b.edge) +
           "' specified twice");
    if (b.edge >= Edge::hole_left && !(cfg.geometry.hole_side > 0))
      fail(std::string("config: boundary edge '") + edge_name(b.edge) +
           "' requires geometry.hole_side > 0");
  }
  std::set<std::string> names;
  for (const auto& p : cfg.probes) {
    if (p.name.empty()) fail("config: probe names must be non-empty");
    if (!names.insert(p.name).second)
      fail("config: duplicate probe name '" + p.name + "'");
  }
}

}  // namespace

Config parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t b = 0; b < stop && b < text.size(); ++b) {
      if (text[b] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("config: JSON syntax error at line " + std::to_string(line) +
         ", column " + std::to_string(col));
  }
  if (!j.is_object()) fail("config: top level must be an object");

  if (j.contains("preset")) {
    check_keys(j, "a preset config (only 'preset' and 'run' are allowed)",
               {"preset", "run"});
    Config cfg = make_preset(as_string(j.at("preset"), "preset"));
    if (j.contains("run")) apply_run_block(j.at("run"), cfg.run, false);
    validate(cfg);
    return cfg;
  }

  check_keys(j, "the top level",
             {"geometry", "material", "numerics", "boundaries", "body_force",
              "probes", "run"});
  Config cfg;

  const Json& geo = require(j, "config", "geometry");
  check_keys(geo, "geometry", {"side_length", "dx", "hole_side"});
  cfg.geometry.side_length = as_real(require(geo, "geometry", "side_length"),
                                     "geometry.side_length");
  cfg.geometry.dx = as_real(require(geo, "geometry", "dx"), "geometry.dx");
  cfg.geometry.hole_side = real_or(geo, "geometry", "hole_side", 0);

  const Json& mat = require(j, "config", "material");
  check_keys(mat, "material", {"lambda", "mu", "rho0"});
  cfg.material.lambda = as_real(require(mat, "material", "lambda"), "material.lambda");
  cfg.material.mu = as_real(require(mat, "material", "mu"), "material.mu");
  cfg.material.rho0 = as_real(require(mat, "material", "rho0"), "material.rho0");

  if (j.contains("numerics")) {
    const Json& num = j.at("numerics");
    check_keys(num, "numerics",
               {"tau_ratio", "source_extrapolation", "boundary_prediction",
                "corrector", "damping", "damping_onset"});
    cfg.numerics.tau_ratio = real_or(num, "numerics", "tau_ratio", 0.55);
    auto bool_opt = [&](const char* key, bool& dst) {
      if (!num.contains(key)) return;
      const Json& v = num.at(key);
      if (!v.is_boolean())
        fail(std::string("config: numerics.") + key + " must be a boolean");
      dst = v.get<bool>();
    };
    bool_opt("source_extrapolation", cfg.numerics.source_extrapolation);
    bool_opt("boundary_prediction", cfg.numerics.boundary_prediction);
    bool_opt("corrector", cfg.numerics.corrector);
    cfg.numerics.damping = real_or(num, "numerics", "damping", 0);
    cfg.numerics.damping_onset = real_or(num, "numerics", "damping_onset", 0);
  }

  if (j.contains("boundaries")) {
    const Json& bnd = j.at("boundaries");
    if (!bnd.is_object()) fail("config: boundaries must be an object keyed by edge");
    for (auto it = bnd.begin(); it != bnd.end(); ++it) {
      const auto edge = edge_from_name(it.key());
      if (!edge)
        fail("config: unknown boundary edge '" + it.key() +
             "' (expected left, right, bottom, top or hole_* variants)");
      cfg.boundaries.push_back(
          {*edge, parse_edge_condition(it.value(), "boundaries." + it.key())});
    }
  }

  if (j.contains("body_force"))
    cfg.body_force = as_vec2(j.at("body_force"), "body_force");

  if (j.contains("probes")) {
    const Json& probes = j.at("probes");
    if (!probes.is_object()) fail("config: probes must be an object keyed by name");
    for (auto it = probes.begin(); it != probes.end(); ++it) {
      cfg.probes.push_back({it.key(), as_vec2(it.value(), "probes." + it.key())});
    }
  }

  apply_run_block(require(j, "config", "run"), cfg.run, true);
  validate(cfg);
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("cannot read config file: " + path);
  return parse_config(buf.str());
}

namespace {

Json schedule_to_json(const LoadSchedule& s) {
  Json j;
  switch (s.kind) {
    case LoadSchedule::Kind::constant:
      j["kind"] = "constant";
      j["amplitude"] = s.amplitude;
      break;
    case LoadSchedule::Kind::ramp_hold:
      j["kind"] = "ramp_hold";
      j["amplitude"] = s.amplitude;
      j["t_ramp"] = s.t_ramp;
      break;
    case LoadSchedule::Kind::step_hold_release:
      j["kind"] = "step_hold_release";
      j["amplitude"] = s.amplitude;
      j["t_release"] = s.t_release;
      break;
  }
  return j;
}

}  // namespace

Json config_to_json(const Config& cfg) {
  Json j;
  j["geometry"]["side_length"] = cfg.geometry.side_length;
  j["geometry"]["dx"] = cfg.geometry.dx;
  if (cfg.geometry.hole_side > 0) j["geometry"]["hole_side"] = cfg.geometry.hole_side;
  j["material"]["lambda"] = cfg.material.lambda;
  j["material"]["mu"] = cfg.material.mu;
  j["material"]["rho0"] = cfg.material.rho0;
  j["numerics"]["tau_ratio"] = cfg.numerics.tau_ratio;
  j["numerics"]["source_extrapolation"] = cfg.numerics.source_extrapolation;
  j["numerics"]["boundary_prediction"] = cfg.numerics.boundary_prediction;
  j["numerics"]["corrector"] = cfg.numerics.corrector;
  j["numerics"]["damping"] = cfg.numerics.damping;
  j["numerics"]["damping_onset"] = cfg.numerics.damping_onset;
  Json bnd = Json::object();
  for (const auto& b : cfg.boundaries) {
    Json e;
    e["type"] = b.condition.type == Condition::neumann ? "traction" : "momentum";
    e["schedule"] = schedule_to_json(b.condition.schedule);
    switch (b.condition.axis) {
      case EdgeCondition::Axis::normal:
        e["direction"] = "normal";
        break;
      case EdgeCondition::Axis::tangential:
        e["direction"] = "tangential";
        break;
      case EdgeCondition::Axis::vector:
        e["direction"] = {b.condition.direction[0], b.condition.direction[1]};
        break;
    }
    bnd[edge_name(b.edge)] = e;
  }
  j["boundaries"] = bnd;
  j["body_force"] = {cfg.body_force[0], cfg.body_force[1]};
  Json probes = Json::object();
  for (const auto& p : cfg.probes) probes[p.name] = {p.position[0], p.position[1]};
  j["probes"] = probes;
  j["run"]["t_max"] = cfg.run.t_max;
  j["run"]["dump_every"] = cfg.run.dump_every;
  j["run"]["out_dir"] = cfg.run.out_dir;
  return j;
}

std::vector<std::string> preset_names() {
  return {"tension", "shear", "plate_with_hole"};
}

Config make_preset(const std::string& name) {
  Config cfg;
  cfg.preset = name;
  cfg.material = {1.0, 1.0, 1.0};

  const EdgeCondition traction_free{};  // zero normal traction
  auto normal_load = [](const LoadSchedule& s) {
    return EdgeCondition{Condition::neumann, s, EdgeCondition::Axis::normal, {0, 0}};
  };

  if (name == "tension") {
    cfg.geometry = {1.0, 0.025, 0.0};
    const LoadSchedule ramp{LoadSchedule::Kind::ramp_hold, 1.0, 1.0, 0};
    cfg.boundaries = {{Edge::left, traction_free},
                      {Edge::right, traction_free},
                      {Edge::bottom, normal_load(ramp)},
                      {Edge::top, normal_load(ramp)}};
    cfg.probes = {{"P1", {0.0125, 0.4875}},
                  {"P2", {-0.4875, 0.4875}},
                  {"P3", {-0.4875, 0.0125}}};
    cfg.run = {3.0, 0, "out/tension"};
    cfg.numerics.corrector = true;
    cfg.numerics.boundary_prediction = true;
    // At the 48% working strain the held state feeds a slow secular growth;
    // the post-ramp drain keeps long holds bounded without touching the
    // loading transient.
    cfg.numerics.damping = 1.5;
    cfg.numerics.damping_onset = 1.25;
  } else if (name == "shear") {
    cfg.geometry = {1.0, 0.025, 0.0};
    const LoadSchedule ramp{LoadSchedule::Kind::ramp_hold, 0.05, 1.0, 0};
    const EdgeCondition fixed{Condition::dirichlet,
                              LoadSchedule{LoadSchedule::Kind::constant, 0, 1, 1},
                              EdgeCondition::Axis::vector,
                              {0, 0}};
    const EdgeCondition sheared{Condition::neumann, ramp,
                                EdgeCondition::Axis::tangential, {0, 0}};
    cfg.boundaries = {{Edge::left, fixed},
                      {Edge::right, sheared},
                      {Edge::bottom, traction_free},
                      {Edge::top, traction_free}};
    cfg.probes = {{"P2", {-0.4875, 0.4875}}, {"P3", {-0.4875, 0.0125}}};
    cfg.run = {8.0, 0, "out/shear"};
    cfg.numerics.corrector = true;
    cfg.numerics.boundary_prediction = true;
  } else if (name == "plate_with_hole") {
    cfg.geometry = {1.0, 0.0125, 0.4};
    const LoadSchedule step{LoadSchedule::Kind::step_hold_release, 0.1, 0, 1.0};
    cfg.boundaries = {{Edge::left, traction_free},
                      {Edge::right, traction_free},
                      {Edge::bottom, normal_load(step)},
                      {Edge::top, normal_load(step)},
                      {Edge::hole_left, traction_free},
                      {Edge::hole_right, traction_free},
                      {Edge::hole_bottom, traction_free},
                      {Edge::hole_top, traction_free}};
    cfg.probes = {{"Q1", {0.20625, 0.00625}},
                  {"Q2", {0.00625, 0.49375}},
                  {"Q3", {0.30625, 0.20625}},
                  {"Q4", {0.20625, 0.30625}},
                  {"Q5", {0.49375, 0.00625}}};
    cfg.run = {3.0, 0, "out/plate_with_hole"};
    cfg.numerics.corrector = true;
    cfg.numerics.boundary_prediction = true;
  } else {
    fail("config: unknown preset '" + name +
         "' (available: tension, shear, plate_with_hole)");
  }
  return cfg;
}

Real derived_timestep(const Config& cfg) {
  return derive_timestep(cfg.geometry.dx, cfg.material.mu, cfg.material.rho0);
}

}  // namespace lbsolid
