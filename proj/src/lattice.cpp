#include "lbsolid/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lbsolid {

VelocitySet build_d2q9(Real dx, Real dt) {
  if (!(dx > 0) || !(dt > 0))
    throw config_error("build_d2q9: dx and dt must be positive");
  VelocitySet vs;
  const Real speed = dx / dt;
  vs.lattice_speed = speed;
  vs.cs2 = speed * speed / 3;
  vs.cs4 = vs.cs2 * vs.cs2;
  vs.cs = std::sqrt(vs.cs2);
  for (int i = 0; i < kQ; ++i) {
    vs.c[i] = Vec2(kD2Q9Offset[i][0], kD2Q9Offset[i][1]) * speed;
    vs.w[i] = i == 0 ? Real(4) / 9 : (i <= 4 ? Real(1) / 9 : Real(1) / 36);
  }
  return vs;
}

Real derive_timestep(Real dx, Real mu, Real rho0) {
  if (!(dx > 0) || !(mu > 0) || !(rho0 > 0))
    throw config_error("derive_timestep: dx, mu and rho0 must be positive");
  return dx * std::sqrt(rho0 / mu) / std::sqrt(Real(3));
}

const char* edge_name(Edge e) {
  switch (e) {
    case Edge::left: return "left";
    case Edge::right: return "right";
    case Edge::bottom: return "bottom";
    case Edge::top: return "top";
    case Edge::hole_left: return "hole_left";
    case Edge::hole_right: return "hole_right";
    case Edge::hole_bottom: return "hole_bottom";
    case Edge::hole_top: return "hole_top";
  }
  return "?";
}

Vec2 Grid::edge_normal(Edge e) {
  switch (e) {
    case Edge::left: return {-1, 0};
    case Edge::right: return {1, 0};
    case Edge::bottom: return {0, -1};
    case Edge::top: return {0, 1};
    // hole normals point out of the material, into the hole
    case Edge::hole_left: return {1, 0};
    case Edge::hole_right: return {-1, 0};
    case Edge::hole_bottom: return {0, 1};
    case Edge::hole_top: return {0, -1};
  }
  return {0, 0};
}

namespace {

int checked_division(Real length, Real dx, const char* what) {
  const Real ratio = length / dx;
  const int n = static_cast<int>(std::llround(ratio));
  if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max<Real>(Real(1), ratio))
    throw config_error(std::string(what) +
                       " must be an integer multiple of dx, got ratio " +
                       std::to_string(ratio));
  return n;
}

struct HoleBox {
  bool present{false};
  Real lo1{0}, hi1{0}, lo2{0}, hi2{0};
};

// One straight boundary face: the plane coordinate, its extent, which way
// material leaves through it, and how it is labelled.
struct Face {
  Edge edge;
  int axis;        // 0: plane of constant x1, 1: constant x2
  Real plane;
  Real seg_lo, seg_hi;  // extent along the other axis
  Real outward;    // sign of the crossing direction component
};

// First boundary face a lattice link crosses on its way out of the
// material. Corner-grazing ties resolve to Dirichlet faces first, then to
// the smaller edge id, so loaded corners inherit the kinematic condition.
Edge classify_crossing(const Vec2& from, const Vec2& dir,
                       const std::vector<Face>& faces,
                       const std::array<Condition, kEdgeCount>& cond, Real dx,
                       int site, int q) {
  const Real seg_tol = 1e-9 * dx;
  Real best_s = 2;
  Edge best_edge = Edge::left;
  bool found = false;
  for (const auto& f : faces) {
    const Real d = f.axis == 0 ? dir[0] : dir[1];
    if (d * f.outward <= 0) continue;
    const Real x0 = f.axis == 0 ? from[0] : from[1];
    if ((f.plane - x0) * f.outward < -seg_tol) continue;  // already past it
    const Real s = (f.plane - x0) / d;
    if (s <= 0 || s > 1 + 1e-12) continue;
    const Real other = f.axis == 0 ? from[1] + s * dir[1] : from[0] + s * dir[0];
    if (other < f.seg_lo - seg_tol || other > f.seg_hi + seg_tol) continue;
    if (!found || s < best_s - 1e-12) {
      best_s = s;
      best_edge = f.edge;
      found = true;
    } else if (s < best_s + 1e-12) {
      const bool new_dirichlet = cond[static_cast<int>(f.edge)] == Condition::dirichlet;
      const bool old_dirichlet = cond[static_cast<int>(best_edge)] == Condition::dirichlet;
      if ((new_dirichlet && !old_dirichlet) ||
          (new_dirichlet == old_dirichlet && f.edge < best_edge))
        best_edge = f.edge;
    }
  }
  if (!found)
    throw config_error("grid: link from site " + std::to_string(site) +
                       " direction " + std::to_string(q) +
                       " leaves the material without crossing a boundary face");
  return best_edge;
}

Grid assemble(int n1, int n2, Real dx, bool per1, bool per2, const HoleBox& hole,
              const std::array<Condition, kEdgeCount>& cond) {
  Grid g;
  g.n1 = n1;
  g.n2 = n2;
  g.dx = dx;
  g.extent1 = n1 * dx;
  g.extent2 = n2 * dx;
  g.origin = Vec2(-g.extent1 / 2, -g.extent2 / 2);
  g.periodic1 = per1;
  g.periodic2 = per2;
  g.hole_side = hole.present ? hole.hi1 - hole.lo1 : 0;

  const int n = n1 * n2;
  g.solid.assign(n, 1);
  if (hole.present) {
    for (int s = 0; s < n; ++s) {
      const Vec2 x = g.position(s);
      if (x[0] > hole.lo1 && x[0] < hole.hi1 && x[1] > hole.lo2 && x[1] < hole.hi2)
        g.solid[s] = 0;
    }
  }
  g.solid_sites.reserve(n);
  for (int s = 0; s < n; ++s)
    if (g.solid[s]) g.solid_sites.push_back(s);

  std::vector<Face> faces;
  const Real lo1 = g.origin[0], hi1 = g.origin[0] + g.extent1;
  const Real lo2 = g.origin[1], hi2 = g.origin[1] + g.extent2;
  if (!per1) {
    faces.push_back({Edge::left, 0, lo1, lo2, hi2, -1});
    faces.push_back({Edge::right, 0, hi1, lo2, hi2, 1});
  }
  if (!per2) {
    faces.push_back({Edge::bottom, 1, lo2, lo1, hi1, -1});
    faces.push_back({Edge::top, 1, hi2, lo1, hi1, 1});
  }
  if (hole.present) {
    faces.push_back({Edge::hole_left, 0, hole.lo1, hole.lo2, hole.hi2, 1});
    faces.push_back({Edge::hole_right, 0, hole.hi1, hole.lo2, hole.hi2, -1});
    faces.push_back({Edge::hole_bottom, 1, hole.lo2, hole.lo1, hole.hi1, 1});
    faces.push_back({Edge::hole_top, 1, hole.hi2, hole.lo1, hole.hi1, -1});
  }

  g.neighbor.assign(n, {});
  g.links.assign(n, {});
  for (int s = 0; s < n; ++s) g.neighbor[s].fill(-1);

  for (int s = 0; s < n; ++s) {
    if (!g.solid[s]) continue;
    const int i = g.i_of(s), j = g.j_of(s);
    g.neighbor[s][0] = s;
    g.links[s][0] = {LinkKind::interior, Edge::left};
    for (int q = 1; q < kQ; ++q) {
      int i2 = i + kD2Q9Offset[q][0];
      int j2 = j + kD2Q9Offset[q][1];
      if (per1) i2 = (i2 + n1) % n1;
      if (per2) j2 = (j2 + n2) % n2;
      const bool inside = i2 >= 0 && i2 < n1 && j2 >= 0 && j2 < n2;
      if (inside && g.solid[g.index(i2, j2)]) {
        g.neighbor[s][q] = g.index(i2, j2);
        g.links[s][q] = {LinkKind::interior, Edge::left};
        continue;
      }
      const Vec2 dir = Vec2(kD2Q9Offset[q][0], kD2Q9Offset[q][1]) * dx;
      const Edge e = classify_crossing(g.position(s), dir, faces, cond, dx, s, q);
      const LinkKind kind = cond[static_cast<int>(e)] == Condition::dirichlet
                                ? LinkKind::dirichlet
                                : LinkKind::neumann;
      g.links[s][q] = {kind, e};
      g.boundary_links.push_back({static_cast<std::int32_t>(s),
                                  static_cast<std::uint8_t>(q), e, kind});
    }
  }
  return g;
}

}  // namespace

Grid build_grid(const GeometrySpec& spec) {
  if (!(spec.side_length > 0) || !(spec.dx > 0))
    throw config_error("grid: side_length and dx must be positive");
  const int n = checked_division(spec.side_length, spec.dx, "grid: side_length");
  if (n < 3)
    throw config_error("grid: fewer than three sites across the domain");

  HoleBox hole;
  if (spec.hole_side > 0) {
    if (!(spec.hole_side < spec.side_length))
      throw config_error("grid: hole_side must be smaller than side_length");
    const Real margin = (spec.side_length - spec.hole_side) / 2;
    const int m = checked_division(margin, spec.dx, "grid: hole margin");
    if (m < 3)
      throw config_error(
          "grid: ligament between hole and outer boundary is narrower than "
          "three sites");
    if (n - 2 * m < 1) throw config_error("grid: hole narrower than one cell");
    hole.present = true;
    hole.lo1 = hole.lo2 = -spec.hole_side / 2;
    hole.hi1 = hole.hi2 = spec.hole_side / 2;
  } else if (spec.hole_side < 0) {
    throw config_error("grid: hole_side must be non-negative");
  }

  return assemble(n, n, spec.dx, false, false, hole, spec.edge_condition);
}

Grid build_strip_grid(int n1, int n2, Real dx, bool periodic1, bool periodic2,
                      const std::array<Condition, kEdgeCount>& edge_condition) {
  if (n1 < 1 || n2 < 1 || !(dx > 0))
    throw config_error("grid: strip dimensions must be positive");
  return assemble(n1, n2, dx, periodic1, periodic2, HoleBox{}, edge_condition);
}

}  // namespace lbsolid
