#include "lbsolid/kinetics.hpp"

#include <string>

namespace lbsolid {

void Parameters::validate() const {
  if (!(dt > 0)) throw config_error("parameters: dt must be positive");
  if (!(tau_bar > dt / 2))
    throw config_error("parameters: tau_bar must exceed dt/2 for stability");
  if (!(rho0 > 0)) throw config_error("parameters: rho0 must be positive");
  if (!(mu > 0)) throw config_error("parameters: mu must be positive");
  if (lambda < 0) throw config_error("parameters: lambda must be non-negative");
}

KineticState::KineticState(std::size_t n_sites)
    : r(n_sites, 0),
      jbar(n_sites, Vec2::Zero()),
      pbar(n_sites, Sym2d::Zero()),
      source(n_sites, Vec2::Zero()) {
  f[0].assign(n_sites * kQ, 0);
  f[1].assign(n_sites * kQ, 0);
}

void collide_all(KineticState& state, const VelocitySet& vs, const Parameters& p,
                 const Grid& grid, int threads) {
  auto& f = state.curr();
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    Dist fs;
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = grid.solid_sites[k];
      Real* slot = &f[static_cast<std::size_t>(s) * kQ];
      for (int i = 0; i < kQ; ++i) fs[i] = slot[i];
      const Dist feq = equilibrium(state.r[s], state.jbar[s], state.pbar[s], vs);
      const Dist psi = source_projection(state.source[s], vs);
      const Dist out = collide(fs, feq, psi, p);
      for (int i = 0; i < kQ; ++i) slot[i] = out[i];
    }
  });
}

void stream(KineticState& state, const Grid& grid, int threads) {
  const auto& src = state.curr();
  auto& dst = state.prev();
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = grid.solid_sites[k];
      const auto& nbr = grid.neighbor[s];
      const Real* f = &src[static_cast<std::size_t>(s) * kQ];
      for (int i = 0; i < kQ; ++i) {
        const int d = nbr[i];
        if (d >= 0) dst[static_cast<std::size_t>(d) * kQ + i] = f[i];
      }
    }
  });
  state.swap_buffers();
}

void compute_moments_all(const KineticState& state, const std::vector<Vec2>& source,
                         const VelocitySet& vs, const Parameters& p,
                         const Grid& grid, std::vector<Real>& r_out,
                         std::vector<Vec2>& jbar_out, std::vector<Sym2d>& pbar_out,
                         int threads) {
  const auto& f = state.curr();
  r_out.resize(state.r.size());
  jbar_out.resize(state.jbar.size());
  pbar_out.resize(state.pbar.size());
  parallel_for(grid.solid_sites.size(), threads, [&](std::size_t lo, std::size_t hi) {
    Dist fs;
    for (std::size_t k = lo; k < hi; ++k) {
      const int s = grid.solid_sites[k];
      const Real* slot = &f[static_cast<std::size_t>(s) * kQ];
      for (int i = 0; i < kQ; ++i) fs[i] = slot[i];
      const Moments m = compute_moments(fs, source[s], vs, p);
      r_out[s] = m.r;
      jbar_out[s] = m.jbar;
      pbar_out[s] = m.pbar;
    }
  });
}

}  // namespace lbsolid
