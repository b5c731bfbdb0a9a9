#ifndef QGC_CONTROL_SIM_HPP
#define QGC_CONTROL_SIM_HPP

#include "qgc/operator_algebra.hpp"
#include "qgc/parallel.hpp"
#include "qgc/projective.hpp"

#include <cstdint>
#include <vector>

namespace qgc {

/// Bilinear control system: drift Hamiltonian H0 plus control Hamiltonians
/// H1..Hm coupled through real control values (hbar = 1).
struct ControlSystem {
  int n = 0;
  Cmat drift;
  std::vector<Cmat> controls;

  ControlSystem(Cmat drift_, std::vector<Cmat> controls_,
                double herm_tol = Tolerances{}.herm_tol);

  int num_controls() const { return static_cast<int>(controls.size()); }
  /// H0 + sum_i values[i] * Hi
  Cmat segment_hamiltonian(const std::vector<double>& values) const;
  /// The anti-Hermitian generators {-iH0, -iH1, ..., -iHm}.
  std::vector<Cmat> algebra_generators() const;
};

/// Piecewise-constant control schedule.
struct ControlSchedule {
  struct Segment {
    double duration = 0.0;
    std::vector<double> values;
  };
  std::vector<Segment> segments;

  double total_duration() const;
  void validate(int num_controls) const;
};

/// Sampled evolution: times (starting at 0) and the state matrix at each
/// time. Exact propagation yields projectors satisfying the PureState
/// invariants; the ODE-integrated flow may drift off the projector manifold
/// by its integration error.
struct Trajectory {
  std::vector<double> times;
  std::vector<Cmat> states;
};

/// Ordered product of segment propagators exp(-i H_seg dt), most recent on
/// the left. Empty schedule gives the identity.
Cmat propagate_unitary(const ControlSystem& sys, const ControlSchedule& sched);

/// p(t) = U(t) p0 U(t)^dag sampled on a segment-uniform grid.
Trajectory propagate_state(const ControlSystem& sys, const PureState& p0,
                           const ControlSchedule& sched, int samples_per_segment);

/// Integrates dp/dt = -i[H(t), p] with classical RK4 on a fixed grid,
/// projecting to the nearest rank-1 projector at segment boundaries.
/// Exists to demonstrate that the Hamiltonian flow reproduces the exact
/// conjugated dynamics; production propagation uses exact exponentials.
Trajectory hamilton_flow_integrate(const ControlSystem& sys, const PureState& p0,
                                   const ControlSchedule& sched, double step);

/// tr(p q), in [0, 1] up to rounding.
double fidelity(const PureState& p, const PureState& q);

struct ShootingResult {
  double best_fidelity = 0.0;
  ControlSchedule best_schedule;
  int best_index = 0;  // 0 is the empty schedule
};

struct ShootingOptions {
  int segments = 8;
  double u_max = 10.0;
  ExecPolicy policy = ExecPolicy::parallel;
};

/// Random-shooting reachability demo: `budget` random piecewise-constant
/// schedules over the horizon (plus the empty schedule as candidate 0),
/// returning the best final fidelity. Deterministic given the seed; ties
/// break toward the lowest candidate index.
ShootingResult random_shooting_reach(const ControlSystem& sys, const PureState& p0,
                                     const PureState& target, int budget, double horizon,
                                     std::uint64_t seed, const ShootingOptions& opts = {});

}  // namespace qgc

#endif
