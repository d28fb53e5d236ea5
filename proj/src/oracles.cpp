#include "lbsolid/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbsolid/material.hpp"

namespace lbsolid {

namespace {

Vec2 uniaxial_residual(Real a, Real b, Real traction, Real lambda, Real mu) {
  Mat2 h = Mat2::Zero();
  h(0, 0) = a - 1;
  h(1, 1) = b - 1;
  const Mat2 p = first_pk(h, lambda, mu);
  return {p(0, 0), p(1, 1) - traction};
}

}  // namespace

StaticUniaxialSolution static_uniaxial(Real traction, Real lambda, Real mu) {
  Real a = 1, b = 1;
  Vec2 res = uniaxial_residual(a, b, traction, lambda, mu);
  for (int it = 0; it < 100; ++it) {
    if (res.norm() <= 1e-12) return {a, b, res.norm(), it};
    // analytic Jacobian of (P11, P22) in (a, b); for F = diag(a, b),
    //   P11 = mu a + s / a,  P22 = mu b + s / b,  s = lambda/2 (a^2 b^2 - 1) - mu
    const Real s = lambda / 2 * (a * a * b * b - 1) - mu;
    Mat2 jac;
    jac << mu + lambda * b * b - s / (a * a), lambda * a * b,
           lambda * a * b, mu + lambda * a * a - s / (b * b);
    const Vec2 dir = jac.fullPivLu().solve(-res);
    Real alpha = 1;
    bool advanced = false;
    while (alpha > 1e-10) {
      const Real an = a + alpha * dir[0];
      const Real bn = b + alpha * dir[1];
      if (an > 0 && bn > 0) {
        const Vec2 rn = uniaxial_residual(an, bn, traction, lambda, mu);
        if (rn.norm() < res.norm()) {
          a = an;
          b = bn;
          res = rn;
          advanced = true;
          break;
        }
      }
      alpha /= 2;
    }
    if (!advanced)
      throw numerical_error(
          "static uniaxial oracle: line search stalled, residual = " +
          std::to_string(res.norm()));
  }
  throw numerical_error(
      "static uniaxial oracle: no convergence in 100 iterations, residual = " +
      std::to_string(res.norm()));
}

Real fd_energy_gradient_check(const Mat2& H, Real lambda, Real mu, Real h) {
  for (int attempt = 0;; ++attempt) {
    try {
      const Mat2 p = first_pk(H, lambda, mu);
      Real dev = 0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          Mat2 hp = H, hm = H;
          hp(a, b) += h;
          hm(a, b) -= h;
          const Real fd = (neo_hooke_energy(hp, lambda, mu) -
                           neo_hooke_energy(hm, lambda, mu)) /
                          (2 * h);
          dev = std::max(dev, std::abs(p(a, b) - fd));
        }
      }
      return dev;
    } catch (const numerical_error&) {
      if (attempt >= 1) throw;
      h /= 10;  // perturbation inverted the element; retry once, smaller
    }
  }
}

Real wave_speed(WaveKind kind, Real lambda, Real mu, Real rho0) {
  if (!(mu > 0) || !(rho0 > 0) || lambda < 0)
    throw config_error("wave_speed: invalid material parameters");
  return kind == WaveKind::pressure ? std::sqrt((lambda + 2 * mu) / rho0)
                                    : std::sqrt(mu / rho0);
}

Real linear_wave_reference(WaveKind kind, Real x, Real t, Real lambda, Real mu,
                           Real rho0, const std::function<Real(Real)>& profile) {
  const Real c = wave_speed(kind, lambda, mu, rho0);
  return (profile(x - c * t) + profile(x + c * t)) / 2;
}

namespace {

// Discrete peak position refined by a parabola through the three samples
// around the maximum of |series|.
Real refined_peak_time(const std::vector<Real>& series, std::size_t lo, Real dt) {
  std::size_t best = lo;
  for (std::size_t k = lo; k < series.size(); ++k) {
    if (std::abs(series[k]) > std::abs(series[best])) best = k;
  }
  Real t = (best + 1) * dt;  // series[k] is the state after step k + 1
  if (best > 0 && best + 1 < series.size()) {
    const Real ym = std::abs(series[best - 1]);
    const Real y0 = std::abs(series[best]);
    const Real yp = std::abs(series[best + 1]);
    const Real denom = ym - 2 * y0 + yp;
    if (denom < 0) t += dt / 2 * (ym - yp) / denom;
  }
  return t;
}

}  // namespace

WaveCheck wave_cross_validation(WaveKind kind, int n_sites, Real dx, Real lambda,
                                Real mu, Real rho0, Real amplitude,
                                const std::function<void(Real, Real, Real)>& sink) {
  if (n_sites < 16) throw config_error("wave check: need at least 16 sites");
  const Real dt = derive_timestep(dx, mu, rho0);
  const Real length = n_sites * dx;
  const Real c = wave_speed(kind, lambda, mu, rho0);
  const Real t_star = (length / 2) / c;

  Scenario sc;
  sc.grid = build_periodic_grid(n_sites, 4, dx);
  sc.velocity_set = build_d2q9(dx, dt);
  sc.params.dt = dt;
  sc.params.tau_bar = 0.55 * dt;
  sc.params.rho0 = rho0;
  sc.params.lambda = lambda;
  sc.params.mu = mu;
  sc.name = "wave-check";
  sc.t_max = 1.3 * t_star;

  const Grid& g = sc.grid;
  const int comp = kind == WaveKind::pressure ? 0 : 1;  // longitudinal vs transverse
  const Real width = 8 * dx;
  const int i_pulse = n_sites / 4;
  const Real x_pulse = g.origin[0] + (i_pulse + Real(0.5)) * dx;
  auto wrap = [length](Real d) {
    while (d > length / 2) d -= length;
    while (d < -length / 2) d += length;
    return d;
  };
  auto profile = [&](Real xi) {
    return amplitude * std::exp(-xi * xi / (2 * width * width));
  };

  std::vector<Vec2> u0(g.size(), Vec2::Zero());
  for (const int s : g.solid_sites) {
    u0[s][comp] = profile(wrap(g.position(s)[0] - x_pulse));
  }
  Solver solver(sc);
  solver.initialise(u0, std::vector<Vec2>(g.size(), Vec2::Zero()));

  const int i_probe = (i_pulse + n_sites / 2) % n_sites;
  const int probe = g.index(i_probe, 0);
  const Real x_probe_rel = wrap(g.position(probe)[0] - x_pulse);

  const auto n_steps = static_cast<std::int64_t>(std::ceil(sc.t_max / dt));
  std::vector<Real> sim, ref;
  sim.reserve(n_steps);
  ref.reserve(n_steps);
  for (std::int64_t k = 1; k <= n_steps; ++k) {
    solver.step();
    sim.push_back(solver.mechanics().u[probe][comp]);
    ref.push_back(linear_wave_reference(kind, x_probe_rel, solver.time(), lambda,
                                        mu, rho0, profile));
    if (sink) sink(solver.time(), sim.back(), ref.back());
  }

  // skip the initial half window so the residual foot of the pulse cannot
  // shadow the real arrival
  const auto lo = static_cast<std::size_t>(std::floor(0.5 * t_star / dt));
  WaveCheck out;
  out.speed = c;
  out.steps = n_steps;
  out.arrival_sim = refined_peak_time(sim, lo, dt);
  out.arrival_ref = refined_peak_time(ref, lo, dt);
  out.rel_error = std::abs(out.arrival_sim - out.arrival_ref) / out.arrival_ref;
  return out;
}

EnergyAuditResult energy_audit(const EnergySeries& series, Real t_lo, Real t_hi) {
  EnergyAuditResult out;
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    if (series.t[k] < t_lo || series.t[k] > t_hi) continue;
    const Real gap = std::abs(series.work_external[k] - series.energy_kinetic[k] -
                              series.energy_strain[k]);
    out.max_gap = std::max(out.max_gap, gap);
    out.max_work = std::max(out.max_work, std::abs(series.work_external[k]));
  }
  out.ratio = out.max_work > 0 ? out.max_gap / out.max_work : 0;
  return out;
}

}  // namespace lbsolid
