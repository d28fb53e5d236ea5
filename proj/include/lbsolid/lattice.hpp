#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lbsolid/common.hpp"

namespace lbsolid {

/// Direction enumeration shared by every kernel: 0 is the rest velocity,
/// 1-4 are the axis directions (+x1, +x2, -x1, -x2), 5-8 the diagonals
/// (+x1+x2, -x1+x2, -x1-x2, +x1-x2).
inline constexpr int kQ = 9;

inline constexpr std::array<std::array<int, 2>, kQ> kD2Q9Offset = {{
    {0, 0},
    {1, 0},
    {0, 1},
    {-1, 0},
    {0, -1},
    {1, 1},
    {-1, 1},
    {-1, -1},
    {1, -1},
}};

inline constexpr std::array<int, kQ> kD2Q9Opposite = {0, 3, 4, 1, 2, 7, 8, 5, 6};

struct VelocitySet {
  std::array<Vec2, kQ> c;   // lattice velocities, magnitude C on the axes
  std::array<Real, kQ> w;   // quadrature weights
  Real lattice_speed{};     // C = dX / dt
  Real cs{};                // C / sqrt(3)
  Real cs2{};
  Real cs4{};
};

VelocitySet build_d2q9(Real dx, Real dt);

/// Time step that makes the lattice sound speed coincide with the material
/// shear wave speed: dt = dX * sqrt(rho0 / mu) / sqrt(3).
Real derive_timestep(Real dx, Real mu, Real rho0);

enum class Edge : std::uint8_t {
  left = 0,
  right,
  bottom,
  top,
  hole_left,
  hole_right,
  hole_bottom,
  hole_top,
};

inline constexpr int kEdgeCount = 8;

const char* edge_name(Edge e);

enum class Condition : std::uint8_t { dirichlet, neumann };

enum class LinkKind : std::uint8_t { interior, dirichlet, neumann, none };

struct LinkInfo {
  LinkKind kind{LinkKind::none};
  Edge edge{Edge::left};  // meaningful for boundary links only
};

struct BoundaryLink {
  std::int32_t site{};   // interior site the link starts from
  std::uint8_t dir{};    // outgoing direction crossing the boundary
  Edge edge{Edge::left};
  LinkKind kind{LinkKind::neumann};
};

constexpr std::array<Condition, kEdgeCount> all_edges(Condition c) {
  std::array<Condition, kEdgeCount> a{};
  for (auto& x : a) x = c;
  return a;
}

/// Square material domain of the given side, centred at the origin, with an
/// optional square hole of side hole_side centred inside it. Sites are cell
/// centres; physical boundaries run half a spacing outside the outermost
/// sites, so every boundary link is cut exactly at its midpoint.
struct GeometrySpec {
  Real side_length{1.0};
  Real dx{0.025};
  Real hole_side{0.0};  // 0 disables the hole
  std::array<Condition, kEdgeCount> edge_condition = all_edges(Condition::neumann);
};

struct Grid {
  int n1{0};
  int n2{0};
  Real dx{0};
  Vec2 origin{0, 0};  // lower-left corner of the domain box
  Real extent1{0};
  Real extent2{0};
  Real hole_side{0};
  bool periodic1{false};
  bool periodic2{false};

  std::vector<std::uint8_t> solid;                    // per site, 0 inside the hole
  std::vector<std::int32_t> solid_sites;              // indices of solid sites, ascending
  std::vector<std::array<std::int32_t, kQ>> neighbor; // -1 where the link leaves the material
  std::vector<std::array<LinkInfo, kQ>> links;
  std::vector<BoundaryLink> boundary_links;

  int size() const { return n1 * n2; }
  int index(int i, int j) const { return j * n1 + i; }
  int i_of(int s) const { return s % n1; }
  int j_of(int s) const { return s / n1; }
  bool is_solid(int s) const { return solid[static_cast<std::size_t>(s)] != 0; }

  Vec2 position(int s) const {
    return {origin[0] + (i_of(s) + Real(0.5)) * dx,
            origin[1] + (j_of(s) + Real(0.5)) * dx};
  }

  /// Mirror image of a site across the x2 axis.
  int mirror1(int s) const { return index(n1 - 1 - i_of(s), j_of(s)); }
  /// Mirror image across the x1 axis.
  int mirror2(int s) const { return index(i_of(s), n2 - 1 - j_of(s)); }

  static Vec2 edge_normal(Edge e);
};

Grid build_grid(const GeometrySpec& spec);

/// Rectangular test lattice, periodic along the requested axes. Non-periodic
/// axes get regular boundary links classified against edge_condition.
Grid build_strip_grid(int n1, int n2, Real dx, bool periodic1, bool periodic2,
                      const std::array<Condition, kEdgeCount>& edge_condition =
                          all_edges(Condition::neumann));

inline Grid build_periodic_grid(int n1, int n2, Real dx) {
  return build_strip_grid(n1, n2, dx, true, true);
}

}  // namespace lbsolid
