#include "lbsolid/boundary.hpp"

#include <cmath>
#include <string>

#include "lbsolid/fields.hpp"

namespace lbsolid {

Real schedule_eval(const LoadSchedule& s, Real t) {
  switch (s.kind) {
    case LoadSchedule::Kind::constant:
      return s.amplitude;
    case LoadSchedule::Kind::ramp_hold:
      return t >= s.t_ramp ? s.amplitude : s.amplitude * (t / s.t_ramp);
    case LoadSchedule::Kind::step_hold_release:
      return t < s.t_release ? s.amplitude : 0;
  }
  return 0;
}

Vec2 EdgeCondition::value(const Vec2& normal, Real t) const {
  const Real a = schedule_eval(schedule, t);
  switch (axis) {
    case Axis::normal:
      return a * normal;
    case Axis::tangential:
      return a * Vec2(-normal[1], normal[0]);
    case Axis::vector:
      return a * direction;
  }
  return Vec2::Zero();
}

Real bounce_back_dirichlet(Real f_col, int dir, const Vec2& jstar,
                           const VelocitySet& vs) {
  const Real cj = vs.c[dir][0] * jstar[0] + vs.c[dir][1] * jstar[1];
  return f_col - 2 * vs.w[dir] * cj / vs.cs2;
}

Sym2d traction_to_poisson_boundary(const Vec2& traction, const Vec2& normal,
                                   const Mat2& pk1_b, const Sym2d& pbar_b) {
  if (std::abs(normal.squaredNorm() - 1) > 1e-12)
    throw config_error("traction boundary: normal must be a unit vector");
  const Vec2 tangent(-normal[1], normal[0]);
  const Vec2 g = -traction + (pk1_b + pbar_b.full()) * normal;
  // components in the (normal, tangent) frame; the tangent-tangent entry is
  // free, so it keeps the extrapolated interior value
  const Real g_n = g.dot(normal);
  const Real g_t = g.dot(tangent);
  const Real p_tt = tangent.dot(pbar_b.full() * tangent);
  Mat2 rot;
  rot.col(0) = normal;
  rot.col(1) = tangent;
  Mat2 primed;
  primed << g_n, g_t, g_t, p_tt;
  return Sym2d::FromFull(rot * primed * rot.transpose());
}

Real anti_bounce_back_neumann(Real f_col, int dir, Real r_b, const Sym2d& pstar,
                              const VelocitySet& vs) {
  const Real cx = vs.c[dir][0];
  const Real cy = vs.c[dir][1];
  const Real a11 = pstar.a11 - r_b * vs.cs2;
  const Real a22 = pstar.a22 - r_b * vs.cs2;
  const Real quad = a11 * (cx * cx - vs.cs2) + a22 * (cy * cy - vs.cs2) +
                    2 * pstar.a12 * cx * cy;
  return -f_col + 2 * vs.w[dir] * (r_b + quad / (2 * vs.cs4));
}

std::size_t fill_boundaries(const Grid& grid, const VelocitySet& vs,
                            const BoundaryTable& table, Real t,
                            const std::vector<Real>& f_col,
                            std::vector<Real>& f_new, const std::vector<Real>& r,
                            const std::vector<Mat2>& pk1,
                            const std::vector<Sym2d>& pbar, int threads) {
  const auto& links = grid.boundary_links;
  parallel_for(links.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const BoundaryLink& link = links[k];
      const int s = link.site;
      const int i = link.dir;
      const int ib = kD2Q9Opposite[i];
      const EdgeCondition& ec = table[link.edge];
      const Vec2 n = Grid::edge_normal(link.edge);
      const Real fc = f_col[static_cast<std::size_t>(s) * kQ + i];
      Real filled;
      if (link.kind == LinkKind::dirichlet) {
        filled = bounce_back_dirichlet(fc, i, ec.value(n, t), vs);
      } else {
        // All boundary data comes from the displacement-slaved fields with
        // the damped sampling rule. P_b and Pbar_b must share one rule: the
        // transform relies on their linear parts cancelling in g, and mixed
        // sampling orders would reintroduce a spurious first-order term.
        const Real r_b = smoothed_boundary_value(r, s, i, grid);
        const Mat2 p_b = smoothed_boundary_value(pk1, s, i, grid);
        const Sym2d pbar_b = smoothed_boundary_value(pbar, s, i, grid);
        const Sym2d pstar = traction_to_poisson_boundary(ec.value(n, t), n, p_b, pbar_b);
        filled = anti_bounce_back_neumann(fc, i, r_b, pstar, vs);
      }
      f_new[static_cast<std::size_t>(s) * kQ + ib] = filled;
    }
  });
  return links.size();
}

}  // namespace lbsolid
