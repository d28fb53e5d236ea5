#pragma once

#include <functional>

#include "lbsolid/common.hpp"
#include "lbsolid/scenario.hpp"

namespace lbsolid {

/// Closed-form check values computed independently of the lattice solver.
/// Everything in here goes through textbook continuum mechanics only, so a
/// solver bug cannot leak into the expected values.

struct StaticUniaxialSolution {
  Real lambda1{1};  // transverse stretch
  Real lambda2{1};  // stretch along the pull
  Real residual{0};
  int iterations{0};
};

/// Homogeneous finite-strain equilibrium of a block pulled by a nominal
/// traction T on the faces normal to x2, free on the sides: solves
/// P11(diag(l1, l2)) = 0, P22 = T by Newton iteration with an analytic
/// Jacobian and backtracking line search.
StaticUniaxialSolution static_uniaxial(Real traction, Real lambda, Real mu);

/// Max over components of |P - centered difference of W| at step h.
/// If a perturbation inverts the element the step is reduced once.
Real fd_energy_gradient_check(const Mat2& H, Real lambda, Real mu, Real h);

enum class WaveKind { pressure, shear };

/// Plane-strain linear wave speeds: cp = sqrt((lambda + 2 mu) / rho0),
/// cs = sqrt(mu / rho0).
Real wave_speed(WaveKind kind, Real lambda, Real mu, Real rho0);

/// d'Alembert solution of the 1-d wave equation for an initial displacement
/// profile at rest: u(x, t) = (profile(x - c t) + profile(x + c t)) / 2.
Real linear_wave_reference(WaveKind kind, Real x, Real t, Real lambda, Real mu,
                           Real rho0, const std::function<Real(Real)>& profile);

struct WaveCheck {
  Real arrival_sim{0};
  Real arrival_ref{0};
  Real rel_error{0};
  Real speed{0};
  std::int64_t steps{0};
};

/// Small-amplitude pulse on a periodic strip, run through the lattice
/// solver and compared against linear_wave_reference at the antipodal
/// probe: returns both arrival times and their relative mismatch.
/// Optional sink receives (t, u_sim, u_ref) per step.
WaveCheck wave_cross_validation(
    WaveKind kind, int n_sites, Real dx, Real lambda, Real mu, Real rho0,
    Real amplitude,
    const std::function<void(Real, Real, Real)>& sink = {});

struct EnergyAuditResult {
  Real max_gap{0};        // max |W_ext - E_kin - E_strain| over the window
  Real max_work{0};       // max |W_ext| over the window
  Real ratio{0};          // max_gap / max_work, 0 when no work was done
};

/// Budget check W_ext = E_kin + E_strain on a time window of an energy
/// series.
EnergyAuditResult energy_audit(const EnergySeries& series, Real t_lo, Real t_hi);

}  // namespace lbsolid
