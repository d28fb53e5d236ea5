#include "lbsolid/fields.hpp"

namespace lbsolid {

MechanicalState::MechanicalState(std::size_t n)
    : u(n, Vec2::Zero()),
      grad_u(n, Mat2::Zero()),
      pk1(n, Mat2::Zero()),
      poisson(n, Sym2d::Zero()),
      r_lin(n, 0),
      sigma(n, Sym2d::Zero()),
      energy_density(n, 0) {}

void gradient(const std::vector<Vec2>& u, const Grid& grid, std::vector<Mat2>& out,
              int threads) {
  out.resize(u.size());
  auto at = [&u](int s) -> const Vec2& { return u[s]; };
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = grid.solid_sites[k];
      Mat2 h;
      h.col(0) = detail::axis_derivative<Vec2>(at, s, 0, grid);
      h.col(1) = detail::axis_derivative<Vec2>(at, s, 1, grid);
      out[s] = h;
    }
  });
}

void divergence(const std::vector<Mat2>& field, const Grid& grid,
                std::vector<Vec2>& out, int threads) {
  out.resize(field.size());
  auto col0 = [&field](int s) -> Vec2 { return field[s].col(0); };
  auto col1 = [&field](int s) -> Vec2 { return field[s].col(1); };
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = grid.solid_sites[k];
      out[s] = detail::axis_derivative<Vec2>(col0, s, 0, grid) +
               detail::axis_derivative<Vec2>(col1, s, 1, grid);
    }
  });
}

void source_field(const std::vector<Mat2>& pk1, const std::vector<Sym2d>& pbar,
                  const Vec2& body_force, Real rho0, const Grid& grid,
                  std::vector<Mat2>& scratch, std::vector<Vec2>& out, int threads) {
  scratch.resize(pk1.size());
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = grid.solid_sites[k];
      scratch[s] = pk1[s] + pbar[s].full();
    }
  });
  divergence(scratch, grid, out, threads);
  const Vec2 weight = rho0 * body_force;
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) out[grid.solid_sites[k]] += weight;
  });
}

void update_displacement(std::vector<Vec2>& u, const std::vector<Vec2>& jbar_old,
                         const std::vector<Vec2>& jbar_new, Real rho0, Real dt,
                         const Grid& grid, int threads) {
  const Real c = dt / (2 * rho0);
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = grid.solid_sites[k];
      u[s] += c * (jbar_old[s] + jbar_new[s]);
    }
  });
}

}  // namespace lbsolid
