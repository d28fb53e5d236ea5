#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "lbsolid/common.hpp"
#include "lbsolid/lattice.hpp"

namespace lbsolid {

struct Parameters {
  Real tau_bar{};        // relaxation time, must exceed dt / 2
  Real dt{};
  Real rho0{1};          // reference mass density
  Real lambda{1};        // first Lame parameter
  Real mu{1};            // shear modulus
  Vec2 body_force{0, 0}; // acceleration b, entering the source as rho0 * b

  void validate() const;
};

using Dist = std::array<Real, kQ>;

/// Discrete equilibrium carrying density r, momentum jbar and the Poisson
/// stress Pbar as its zeroth, first and second moments:
///   f_i^eq = w_i [ r + C.j / Cs^2 + (Pbar - r Cs^2 I):(C C - Cs^2 I) / (2 Cs^4) ].
inline Dist equilibrium(Real r, const Vec2& jbar, const Sym2d& pbar,
                        const VelocitySet& vs) {
  Dist out;
  const Real a11 = pbar.a11 - r * vs.cs2;
  const Real a22 = pbar.a22 - r * vs.cs2;
  const Real a12 = pbar.a12;
  const Real inv_cs2 = 1 / vs.cs2;
  const Real half_inv_cs4 = Real(0.5) / vs.cs4;
  for (int i = 0; i < kQ; ++i) {
    const Real cx = vs.c[i][0];
    const Real cy = vs.c[i][1];
    const Real quad =
        a11 * (cx * cx - vs.cs2) + a22 * (cy * cy - vs.cs2) + 2 * a12 * cx * cy;
    out[i] = vs.w[i] * (r + (cx * jbar[0] + cy * jbar[1]) * inv_cs2 +
                        quad * half_inv_cs4);
  }
  return out;
}

/// Projection of the momentum source onto the lattice,
///   psi_i = w_i C.s / Cs^2.
inline Dist source_projection(const Vec2& s1, const VelocitySet& vs) {
  Dist out;
  const Real inv_cs2 = 1 / vs.cs2;
  for (int i = 0; i < kQ; ++i) {
    out[i] = vs.w[i] * (vs.c[i][0] * s1[0] + vs.c[i][1] * s1[1]) * inv_cs2;
  }
  return out;
}

/// BGK relaxation towards equilibrium with trapezoidal source weighting:
///   f_i <- f_i - dt/tau (f_i - f_i^eq) + dt (1 - dt / (2 tau)) psi_i.
inline Dist collide(const Dist& f, const Dist& feq, const Dist& psi,
                    const Parameters& p) {
  Dist out;
  const Real relax = p.dt / p.tau_bar;
  const Real force = p.dt * (1 - Real(0.5) * relax);
  for (int i = 0; i < kQ; ++i) {
    out[i] = f[i] - relax * (f[i] - feq[i]) + force * psi[i];
  }
  return out;
}

struct Moments {
  Real r{};
  Vec2 jbar{0, 0};
  Sym2d pbar{};
};

/// Moments of a distribution; the source contributes half a step so jbar is
/// the trapezoidal momentum:
///   r = sum f_i,  jbar = sum C_i f_i + dt/2 s,  pbar = sum C_i C_i f_i.
/// pbar is carried as a moment in its own right. Its equilibrium flux closes
/// the chain d_t pbar = -Cs^2 (d_b jbar_a + d_a jbar_b + div jbar delta_ab),
/// which is the time derivative of the Poisson stress of the material law
/// because Cs^2 = mu / rho0. Rebuilding pbar from displacement gradients
/// instead couples the quadratic equilibrium term to the momentum field
/// twice per step and amplifies short waves.
inline Moments compute_moments(const Dist& f, const Vec2& s1,
                               const VelocitySet& vs, const Parameters& p) {
  Moments m;
  for (int i = 0; i < kQ; ++i) {
    const Real cx = vs.c[i][0];
    const Real cy = vs.c[i][1];
    m.r += f[i];
    m.jbar[0] += cx * f[i];
    m.jbar[1] += cy * f[i];
    m.pbar.a11 += cx * cx * f[i];
    m.pbar.a22 += cy * cy * f[i];
    m.pbar.a12 += cx * cy * f[i];
  }
  m.jbar += (Real(0.5) * p.dt) * s1;
  return m;
}

/// Double-buffered populations plus the moment fields the kinetics owns.
/// curr() always holds the distribution at the current time level, and
/// r / jbar / pbar hold its moments at the same level; pbar is the kinetic
/// second moment, not the constitutive Poisson stress.
struct KineticState {
  explicit KineticState(std::size_t n_sites);

  std::vector<Real>& curr() { return f[active]; }
  std::vector<Real>& prev() { return f[1 - active]; }
  const std::vector<Real>& curr() const { return f[active]; }
  const std::vector<Real>& prev() const { return f[1 - active]; }
  void swap_buffers() { active = 1 - active; }

  std::array<std::vector<Real>, 2> f;  // n_sites * kQ each
  int active{0};
  std::vector<Real> r;
  std::vector<Vec2> jbar;
  std::vector<Sym2d> pbar;
  std::vector<Vec2> source;  // momentum source s at the current time level
  Real t{0};
  std::int64_t step{0};
};

/// In-place collision over every solid site of the current buffer.
void collide_all(KineticState& state, const VelocitySet& vs, const Parameters& p,
                 const Grid& grid, int threads = 1);

/// Propagates the current buffer along interior links into the other buffer
/// and swaps. Slots fed through boundary links stay stale until the boundary
/// fill pass; together the two passes write every slot exactly once.
void stream(KineticState& state, const Grid& grid, int threads = 1);

/// Moments of the current buffer into r_out / jbar_out / pbar_out.
void compute_moments_all(const KineticState& state, const std::vector<Vec2>& source,
                         const VelocitySet& vs, const Parameters& p,
                         const Grid& grid, std::vector<Real>& r_out,
                         std::vector<Vec2>& jbar_out, std::vector<Sym2d>& pbar_out,
                         int threads = 1);

}  // namespace lbsolid
