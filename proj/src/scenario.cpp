#include "lbsolid/scenario.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "lbsolid/material.hpp"

namespace lbsolid {

std::int64_t Scenario::step_count() const {
  return static_cast<std::int64_t>(std::ceil(t_max / params.dt - 1e-9));
}

Scenario build_scenario(const Config& cfg) {
  Scenario sc;
  sc.name = cfg.preset.empty() ? "custom" : cfg.preset;
  sc.t_max = cfg.run.t_max;
  sc.dump_every = cfg.run.dump_every;
  sc.source_extrapolation = cfg.numerics.source_extrapolation;
  sc.boundary_prediction = cfg.numerics.boundary_prediction;
  sc.corrector = cfg.numerics.corrector;
  sc.damping = cfg.numerics.damping;
  sc.damping_onset = cfg.numerics.damping_onset;

  const Real dt = derived_timestep(cfg);
  if (cfg.numerics.damping * dt >= 1)
    throw config_error("config: numerics.damping too large for the derived "
                       "time step (damping * dt must stay below 1)");
  sc.params.dt = dt;
  sc.params.tau_bar = cfg.numerics.tau_ratio * dt;
  sc.params.rho0 = cfg.material.rho0;
  sc.params.lambda = cfg.material.lambda;
  sc.params.mu = cfg.material.mu;
  sc.params.body_force = cfg.body_force;
  sc.params.validate();

  GeometrySpec geo;
  geo.side_length = cfg.geometry.side_length;
  geo.dx = cfg.geometry.dx;
  geo.hole_side = cfg.geometry.hole_side;
  for (const auto& b : cfg.boundaries)
    geo.edge_condition[static_cast<int>(b.edge)] = b.condition.type;
  sc.grid = build_grid(geo);
  sc.velocity_set = build_d2q9(cfg.geometry.dx, dt);

  for (const auto& b : cfg.boundaries) sc.boundaries[b.edge] = b.condition;

  const Grid& g = sc.grid;
  for (const auto& p : cfg.probes) {
    const int i = static_cast<int>(std::llround((p.position[0] - g.origin[0]) / g.dx - 0.5));
    const int j = static_cast<int>(std::llround((p.position[1] - g.origin[1]) / g.dx - 0.5));
    if (i < 0 || i >= g.n1 || j < 0 || j >= g.n2)
      throw config_error("probe '" + p.name + "' lies outside the domain");
    const int site = g.index(i, j);
    const Vec2 snapped = g.position(site);
    if ((snapped - p.position).cwiseAbs().maxCoeff() > g.dx / 4 + 1e-12)
      throw config_error("probe '" + p.name +
                         "' does not coincide with a lattice site (snap "
                         "tolerance is dx/4)");
    if (!g.is_solid(site))
      throw config_error("probe '" + p.name + "' lies inside the hole");
    sc.probes.push_back({p.name, site, p.position, snapped});
  }
  return sc;
}

Solver::Solver(const Scenario& sc, int threads)
    : sc_(&sc),
      threads_(threads),
      params_(sc.params),
      kin_(static_cast<std::size_t>(sc.grid.size())),
      mech_(static_cast<std::size_t>(sc.grid.size())) {
  params_.validate();
  const std::size_t n = static_cast<std::size_t>(sc.grid.size());
  jbar_prev_.assign(n, Vec2::Zero());
  jbar_next_.assign(n, Vec2::Zero());
  stress_sum_.assign(n, Mat2::Zero());
  if (sc.source_extrapolation || sc.boundary_prediction) {
    pred_u_.assign(n, Vec2::Zero());
    pred_grad_.assign(n, Mat2::Zero());
    pred_pk1_.assign(n, Mat2::Zero());
    pred_pbar_.assign(n, Sym2d::Zero());
    pred_rlin_.assign(n, Real(0));
    pred_source_.assign(n, Vec2::Zero());
  }
  if (sc.corrector) corr_source_.assign(n, Vec2::Zero());
  initialise();
}

void Solver::initialise() {
  const std::size_t n = static_cast<std::size_t>(sc_->grid.size());
  initialise(std::vector<Vec2>(n, Vec2::Zero()), std::vector<Vec2>(n, Vec2::Zero()));
}

void Solver::initialise(const std::vector<Vec2>& u0, const std::vector<Vec2>& v0) {
  const Grid& g = sc_->grid;
  mech_.u = u0;
  refresh_stresses();
  // The carried moments start on the constitutive values; from then on the
  // moment update owns them.
  parallel_for(g.solid_sites.size(), threads_, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = g.solid_sites[k];
      kin_.r[s] = mech_.r_lin[s];
      kin_.jbar[s] = params_.rho0 * v0[s];
      kin_.pbar[s] = mech_.poisson[s];
    }
  });
  source_field(mech_.pk1, mech_.poisson, params_.body_force, params_.rho0, g,
               stress_sum_, kin_.source, threads_);
  // Seed at equilibrium. The bare populations carry the momentum minus half
  // a source step, so that the first moment update reproduces constant-force
  // motion exactly for any relaxation time.
  auto& f = kin_.curr();
  parallel_for(g.solid_sites.size(), threads_, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = g.solid_sites[k];
      const Vec2 j_eff = kin_.jbar[s] - (params_.dt / 2) * kin_.source[s];
      const Dist feq = equilibrium(kin_.r[s], j_eff, kin_.pbar[s], sc_->velocity_set);
      Real* slot = &f[static_cast<std::size_t>(s) * kQ];
      for (int i = 0; i < kQ; ++i) slot[i] = feq[i];
    }
  });
  jbar_prev_ = kin_.jbar;
  kin_.t = 0;
  kin_.step = 0;
}

void Solver::refresh_stresses() {
  const Grid& g = sc_->grid;
  gradient(mech_.u, g, mech_.grad_u, threads_);
  parallel_for(g.solid_sites.size(), threads_, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = g.solid_sites[k];
      const Mat2& h = mech_.grad_u[s];
      const Real det = (Mat2::Identity() + h).determinant();
      if (!(det > 0)) {
        const Vec2 x = g.position(s);
        throw numerical_error(
            "inverted element at site (" + std::to_string(g.i_of(s)) + ", " +
            std::to_string(g.j_of(s)) + "), X = (" + std::to_string(x[0]) +
            ", " + std::to_string(x[1]) + "), det(F) = " + std::to_string(det) +
            ", step " + std::to_string(kin_.step));
      }
      mech_.pk1[s] = first_pk(h, params_.lambda, params_.mu);
      mech_.poisson[s] = poisson_stress(h, params_.mu);
      mech_.r_lin[s] = -params_.rho0 * h.trace();
      mech_.sigma[s] = Sym2d::FromFull(cauchy_stress(h, mech_.pk1[s]));
      mech_.energy_density[s] = neo_hooke_energy(h, params_.lambda, params_.mu);
    }
  });
}

// Displacement-slaved fields at t + advance, from the linear momentum
// extrapolation j(t + dt) ~ 2 j(t) - j(t - dt) folded into the trapezoidal
// displacement rule.
void Solver::predict_fields(Real advance) {
  const Grid& g = sc_->grid;
  const Real c = advance / (2 * params_.rho0);
  parallel_for(g.solid_sites.size(), threads_, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = g.solid_sites[k];
      pred_u_[s] = mech_.u[s] + c * (3 * kin_.jbar[s] - jbar_prev_[s]);
    }
  });
  gradient(pred_u_, g, pred_grad_, threads_);
  parallel_for(g.solid_sites.size(), threads_, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = g.solid_sites[k];
      pred_pk1_[s] = first_pk(pred_grad_[s], params_.lambda, params_.mu);
      pred_pbar_[s] = poisson_stress(pred_grad_[s], params_.mu);
      pred_rlin_[s] = -params_.rho0 * pred_grad_[s].trace();
    }
  });
}

void Solver::predicted_source() {
  predict_fields(params_.dt);
  source_field(pred_pk1_, pred_pbar_, params_.body_force, params_.rho0,
               sc_->grid, stress_sum_, pred_source_, threads_);
}

void Solver::step() {
  const Grid& g = sc_->grid;
  const VelocitySet& vs = sc_->velocity_set;

  source_field(mech_.pk1, mech_.poisson, params_.body_force, params_.rho0, g,
               stress_sum_, kin_.source, threads_);
  collide_all(kin_, vs, params_, g, threads_);
  stream(kin_, g, threads_);
  // The filled populations represent the wall state over [t, t + dt]; with
  // boundary_prediction the slaved fields feeding the fill are advanced to
  // the midpoint of that window.
  const std::vector<Real>* fill_r = &mech_.r_lin;
  const std::vector<Mat2>* fill_pk1 = &mech_.pk1;
  const std::vector<Sym2d>* fill_pbar = &mech_.poisson;
  if (sc_->boundary_prediction) {
    predict_fields(Real(0.3) * params_.dt);
    fill_r = &pred_rlin_;
    fill_pk1 = &pred_pk1_;
    fill_pbar = &pred_pbar_;
  }
  const std::size_t filled =
      fill_boundaries(g, vs, sc_->boundaries, kin_.t, kin_.prev(), kin_.curr(),
                      *fill_r, *fill_pk1, *fill_pbar, threads_);
  assert(filled == g.boundary_links.size());
  (void)filled;

  const std::vector<Vec2>* moment_source = &kin_.source;
  if (sc_->source_extrapolation) {
    predicted_source();
    moment_source = &pred_source_;
  }
  compute_moments_all(kin_, *moment_source, vs, params_, g, kin_.r, jbar_next_,
                      kin_.pbar, threads_);
  if (sc_->damping > 0 && kin_.t >= sc_->damping_onset) {
    const Real keep = 1 - sc_->damping * params_.dt;
    for (const int s : g.solid_sites) jbar_next_[s] *= keep;
  }
  update_displacement(mech_.u, kin_.jbar, jbar_next_, params_.rho0, params_.dt,
                      g, threads_);
  if (sc_->corrector) {
    // Re-evaluate the source on the provisional displacement and move the
    // half source step in the momentum to the new time level, with the
    // matching displacement adjustment.
    refresh_stresses();
    source_field(mech_.pk1, mech_.poisson, params_.body_force, params_.rho0, g,
                 stress_sum_, corr_source_, threads_);
    const Real hj = params_.dt / 2;
    const Real hu = params_.dt * params_.dt / (4 * params_.rho0);
    parallel_for(g.solid_sites.size(), threads_, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        const int s = g.solid_sites[k];
        const Vec2 ds = corr_source_[s] - kin_.source[s];
        jbar_next_[s] += hj * ds;
        mech_.u[s] += hu * ds;
      }
    });
  }
  std::swap(jbar_prev_, kin_.jbar);
  std::swap(kin_.jbar, jbar_next_);
  refresh_stresses();
  kin_.t += params_.dt;
  ++kin_.step;
  check_finite();
}

void Solver::check_finite() const {
  const Grid& g = sc_->grid;
  for (const int s : g.solid_sites) {
    if (!kin_.jbar[s].allFinite() || !mech_.u[s].allFinite())
      throw numerical_error("non-finite field at site (" +
                            std::to_string(g.i_of(s)) + ", " +
                            std::to_string(g.j_of(s)) + ") after step " +
                            std::to_string(kin_.step) +
                            "; the run has gone unstable");
  }
}

RunResult run(const Scenario& sc, int threads, const FrameCallback& every_step) {
  Solver solver(sc, threads);
  const Grid& g = sc.grid;
  const Parameters& p = sc.params;
  const std::int64_t n_steps = sc.step_count();

  RunResult res;
  res.steps = n_steps;
  for (const auto& probe : sc.probes) res.probes.names.push_back(probe.name);
  res.probes.samples.resize(sc.probes.size());

  // Traction-loaded faces do external work; one axis link crosses each face.
  struct WorkFace {
    std::int32_t site;
    std::uint8_t dir;
    Edge edge;
  };
  std::vector<WorkFace> faces;
  for (const auto& link : g.boundary_links) {
    if (link.kind == LinkKind::neumann && link.dir >= 1 && link.dir <= 4)
      faces.push_back({link.site, link.dir, link.edge});
  }
  auto face_velocity = [&](const WorkFace& f) {
    return Vec2(extrapolate_to_boundary(solver.kinetics().jbar, f.site, f.dir, g) /
                p.rho0);
  };
  std::vector<Vec2> v_before(faces.size());
  std::vector<Vec2> v_after(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) v_before[k] = face_velocity(faces[k]);

  Real work = 0;
  for (std::int64_t step = 1; step <= n_steps; ++step) {
    const Real t_mid = solver.time() + p.dt / 2;
    solver.step();

    for (std::size_t k = 0; k < faces.size(); ++k) v_after[k] = face_velocity(faces[k]);
    for (std::size_t k = 0; k < faces.size(); ++k) {
      const Vec2 traction =
          sc.boundaries[faces[k].edge].value(Grid::edge_normal(faces[k].edge), t_mid);
      work += p.dt * g.dx * traction.dot(Real(0.5) * (v_before[k] + v_after[k]));
    }
    v_before.swap(v_after);

    Real e_kin = 0;
    Real e_strain = 0;
    const Real cell = g.dx * g.dx;
    for (const int s : g.solid_sites) {
      e_kin += solver.kinetics().jbar[s].squaredNorm();
      e_strain += solver.mechanics().energy_density[s];
    }
    e_kin *= cell / (2 * p.rho0);
    e_strain *= cell;

    res.energy.t.push_back(solver.time());
    res.energy.work_external.push_back(work);
    res.energy.energy_kinetic.push_back(e_kin);
    res.energy.energy_strain.push_back(e_strain);

    res.probes.t.push_back(solver.time());
    for (std::size_t q = 0; q < sc.probes.size(); ++q) {
      const int s = sc.probes[q].site;
      res.probes.samples[q].push_back(
          {solver.mechanics().u[s], solver.mechanics().sigma[s]});
    }
    if (every_step) every_step(solver, step);
  }
  return res;
}

}  // namespace lbsolid
