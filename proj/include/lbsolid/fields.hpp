#pragma once

#include <vector>

#include "lbsolid/common.hpp"
#include "lbsolid/lattice.hpp"

namespace lbsolid {

/// Displacement, its gradient, and the stress measures derived from it.
/// sigma is stored symmetrised; the raw Cauchy product is symmetric up to
/// round-off anyway. poisson and r_lin are the displacement-slaved Poisson
/// stress -mu (H + H^T + tr H I) and linearised density -rho0 tr H; they
/// feed the momentum source and the traction boundary data, while the
/// kinetic scheme carries its own moment counterparts.
struct MechanicalState {
  explicit MechanicalState(std::size_t n);

  std::vector<Vec2> u;
  std::vector<Mat2> grad_u;
  std::vector<Mat2> pk1;
  std::vector<Sym2d> poisson;
  std::vector<Real> r_lin;
  std::vector<Sym2d> sigma;
  std::vector<Real> energy_density;
};

namespace detail {

/// Second-order derivative of a site-valued quantity along one axis:
/// central where both axis neighbours exist, three-point one-sided
/// otherwise. value(site) must return something Eigen- or scalar-like.
template <typename Value, typename Getter>
Value axis_derivative(Getter&& value, int site, int axis, const Grid& g) {
  const int plus = axis == 0 ? 1 : 2;
  const int minus = axis == 0 ? 3 : 4;
  const int p = g.neighbor[site][plus];
  const int m = g.neighbor[site][minus];
  const Real inv = 1 / (2 * g.dx);
  if (p >= 0 && m >= 0) return Value((value(p) - value(m)) * inv);
  if (p >= 0) {
    const int pp = g.neighbor[p][plus];
    if (pp < 0)
      throw config_error("gradient: fewer than three sites across the material");
    return Value((value(site) * Real(-3) + value(p) * Real(4) - value(pp)) * inv);
  }
  if (m >= 0) {
    const int mm = g.neighbor[m][minus];
    if (mm < 0)
      throw config_error("gradient: fewer than three sites across the material");
    return Value((value(site) * Real(3) - value(m) * Real(4) + value(mm)) * inv);
  }
  throw config_error("gradient: isolated site");
}

}  // namespace detail

/// H = grad u with H(a, b) = d u_a / d X_b.
void gradient(const std::vector<Vec2>& u, const Grid& grid, std::vector<Mat2>& out,
              int threads = 1);

/// (div T)_a = d T_a1 / d X_1 + d T_a2 / d X_2, same stencils as gradient.
void divergence(const std::vector<Mat2>& field, const Grid& grid,
                std::vector<Vec2>& out, int threads = 1);

/// Momentum source s = rho0 b + div(P + Pbar). scratch holds the summed
/// stress field between the two passes.
void source_field(const std::vector<Mat2>& pk1, const std::vector<Sym2d>& pbar,
                  const Vec2& body_force, Real rho0, const Grid& grid,
                  std::vector<Mat2>& scratch, std::vector<Vec2>& out,
                  int threads = 1);

/// Trapezoidal displacement update u += dt / (2 rho0) (jbar_old + jbar_new).
void update_displacement(std::vector<Vec2>& u, const std::vector<Vec2>& jbar_old,
                         const std::vector<Vec2>& jbar_new, Real rho0, Real dt,
                         const Grid& grid, int threads = 1);

/// Linear extrapolation of a site field to the boundary point half a link
/// beyond `site` along `dir`: 1.5 phi(X) - 0.5 phi(X - C dt), falling back
/// to a plain copy when the trailing site is missing.
template <typename Field>
typename Field::value_type extrapolate_to_boundary(const Field& field, int site,
                                                   int dir, const Grid& grid) {
  using V = typename Field::value_type;
  const int behind = grid.neighbor[site][kD2Q9Opposite[dir]];
  if (behind < 0) return field[site];
  return V(field[site] * Real(1.5) - field[behind] * Real(0.5));
}

/// Damped estimate of a site field at the same boundary point: the mean of
/// the last two interior sites along the link, falling back to a plain copy.
/// First order only, but the stencil weights stay in [0, 1], so site-scale
/// oscillation is averaged out instead of doubled. Use this form whenever
/// the estimate feeds back into the update through the boundary fill; the
/// linear rule above amplifies checkerboard content and destabilises the
/// anti-bounce-back closure.
template <typename Field>
typename Field::value_type smoothed_boundary_value(const Field& field, int site,
                                                   int dir, const Grid& grid) {
  using V = typename Field::value_type;
  const int behind = grid.neighbor[site][kD2Q9Opposite[dir]];
  if (behind < 0) return field[site];
  return V((field[site] + field[behind]) * Real(0.5));
}

}  // namespace lbsolid
