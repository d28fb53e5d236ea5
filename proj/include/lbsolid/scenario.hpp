#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lbsolid/boundary.hpp"
#include "lbsolid/config.hpp"
#include "lbsolid/fields.hpp"
#include "lbsolid/kinetics.hpp"
#include "lbsolid/lattice.hpp"

namespace lbsolid {

struct Probe {
  std::string name;
  std::int32_t site{};
  Vec2 requested{0, 0};
  Vec2 position{0, 0};  // snapped site centre
};

struct Scenario {
  Grid grid;
  VelocitySet velocity_set;
  Parameters params;
  BoundaryTable boundaries;
  std::vector<Probe> probes;
  Real t_max{1};
  int dump_every{0};
  bool source_extrapolation{false};
  bool boundary_prediction{false};
  bool corrector{false};
  Real damping{0};
  Real damping_onset{0};
  std::string name{"custom"};

  std::int64_t step_count() const;
};

Scenario build_scenario(const Config& cfg);

/// One lattice Boltzmann time integrator bound to a scenario. A step runs
/// source evaluation, collision, streaming, the boundary fill, the moment
/// update, the trapezoidal displacement update and the stress refresh, in
/// that order.
class Solver {
 public:
  explicit Solver(const Scenario& sc, int threads = 1);

  /// Quiescent start: zero displacement and momentum.
  void initialise();

  /// Start from given displacement and velocity fields. Distributions are
  /// seeded at equilibrium with the source half-step already folded into
  /// the momentum, so constant-source motion is reproduced exactly.
  void initialise(const std::vector<Vec2>& u0, const std::vector<Vec2>& v0);

  void step();

  Real time() const { return kin_.t; }
  std::int64_t step_index() const { return kin_.step; }
  const Grid& grid() const { return sc_->grid; }
  const VelocitySet& velocity_set() const { return sc_->velocity_set; }
  const Parameters& params() const { return params_; }
  const KineticState& kinetics() const { return kin_; }
  const MechanicalState& mechanics() const { return mech_; }

 private:
  void refresh_stresses();
  void check_finite() const;
  void predict_fields(Real advance);
  void predicted_source();

  const Scenario* sc_;
  int threads_;
  Parameters params_;
  KineticState kin_;
  MechanicalState mech_;
  std::vector<Vec2> jbar_prev_;   // momentum one level back, for prediction
  std::vector<Vec2> jbar_next_;
  std::vector<Mat2> stress_sum_;  // P + Pbar scratch
  // scratch for the predicted-source and predicted-boundary variants
  std::vector<Vec2> pred_u_;
  std::vector<Mat2> pred_grad_;
  std::vector<Mat2> pred_pk1_;
  std::vector<Sym2d> pred_pbar_;
  std::vector<Real> pred_rlin_;
  std::vector<Vec2> pred_source_;
  std::vector<Vec2> corr_source_;
};

struct ProbeRecord {
  Vec2 u{0, 0};
  Sym2d sigma{};
};

struct ProbeSeries {
  std::vector<std::string> names;
  std::vector<Real> t;
  std::vector<std::vector<ProbeRecord>> samples;  // [probe][step]
};

struct EnergySeries {
  std::vector<Real> t;
  std::vector<Real> work_external;
  std::vector<Real> energy_kinetic;
  std::vector<Real> energy_strain;
};

struct RunResult {
  ProbeSeries probes;
  EnergySeries energy;
  std::int64_t steps{0};
};

using FrameCallback = std::function<void(const Solver&, std::int64_t step)>;

/// Integrates the scenario to t_max, sampling probes and the energy ledger
/// after every step. The external work accumulates dt * T*(t + dt/2) . v_b
/// per loaded boundary face with v_b averaged across the step.
RunResult run(const Scenario& sc, int threads = 1,
              const FrameCallback& every_step = {});

}  // namespace lbsolid
