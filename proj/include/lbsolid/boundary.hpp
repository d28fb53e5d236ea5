#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lbsolid/common.hpp"
#include "lbsolid/kinetics.hpp"
#include "lbsolid/lattice.hpp"

namespace lbsolid {

struct LoadSchedule {
  enum class Kind { constant, ramp_hold, step_hold_release };
  Kind kind{Kind::constant};
  Real amplitude{0};
  Real t_ramp{1};     // ramp_hold: linear rise on [0, t_ramp], amplitude after
  Real t_release{1};  // step_hold_release: amplitude on [0, t_release), 0 after
};

Real schedule_eval(const LoadSchedule& s, Real t);

/// Load attached to one edge. The scheduled amplitude acts along the edge
/// normal, along its 90-degree rotation, or along an explicit constant
/// vector; Dirichlet edges prescribe momentum density, Neumann edges
/// prescribe nominal traction.
struct EdgeCondition {
  Condition type{Condition::neumann};
  LoadSchedule schedule{};
  enum class Axis { normal, tangential, vector } axis{Axis::normal};
  Vec2 direction{0, 0};

  Vec2 value(const Vec2& normal, Real t) const;
};

struct BoundaryTable {
  std::array<EdgeCondition, kEdgeCount> edge{};

  EdgeCondition& operator[](Edge e) { return edge[static_cast<int>(e)]; }
  const EdgeCondition& operator[](Edge e) const {
    return edge[static_cast<int>(e)];
  }
};

/// Bounce-back closure of a Dirichlet link: the reflected population
///   f_ib = f_i^col - 2 w_i C_i . jstar / Cs^2
/// enforces the wall momentum density jstar at the half-link point.
Real bounce_back_dirichlet(Real f_col, int dir, const Vec2& jstar,
                           const VelocitySet& vs);

/// Boundary Poisson stress whose normal flux matches a prescribed nominal
/// traction: with g = -traction + (P_b + Pbar_b) N, the returned tensor
/// satisfies Pbar* N = g exactly and keeps the extrapolated
/// tangential-tangential component. normal must be unit length.
Sym2d traction_to_poisson_boundary(const Vec2& traction, const Vec2& normal,
                                   const Mat2& pk1_b, const Sym2d& pbar_b);

/// Anti-bounce-back closure of a Neumann link:
///   f_ib = -f_i^col + 2 w_i [ r_b + (Pbar* - r_b Cs^2 I):(C C - Cs^2 I) / (2 Cs^4) ].
Real anti_bounce_back_neumann(Real f_col, int dir, Real r_b, const Sym2d& pstar,
                              const VelocitySet& vs);

/// Fills every slot that streaming left open, reading post-collision
/// populations from f_col. r, pk1 and pbar are the displacement-slaved
/// fields (linearised density, first Piola-Kirchhoff and Poisson stress);
/// the Neumann closure samples them near the wall with the damped rule,
/// which keeps the fill free of feedback through the kinetic moments.
/// Returns the number of filled slots, which must equal
/// grid.boundary_links.size().
std::size_t fill_boundaries(const Grid& grid, const VelocitySet& vs,
                            const BoundaryTable& table, Real t,
                            const std::vector<Real>& f_col,
                            std::vector<Real>& f_new, const std::vector<Real>& r,
                            const std::vector<Mat2>& pk1,
                            const std::vector<Sym2d>& pbar, int threads = 1);

}  // namespace lbsolid
