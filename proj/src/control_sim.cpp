#include "qgc/control_sim.hpp"

#include "qgc/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgc {

ControlSystem::ControlSystem(Cmat drift_, std::vector<Cmat> controls_, double herm_tol)
    : drift(std::move(drift_)), controls(std::move(controls_)) {
  if (drift.rows() != drift.cols() || drift.rows() < 1) {
    throw std::invalid_argument("ControlSystem: drift must be square");
  }
  n = static_cast<int>(drift.rows());
  require_hermitian(drift, herm_tol, "drift Hamiltonian");
  for (size_t i = 0; i < controls.size(); ++i) {
    if (controls[i].rows() != n || controls[i].cols() != n) {
      throw std::invalid_argument("ControlSystem: control " + std::to_string(i) +
                                  " has mismatched dimension");
    }
    require_hermitian(controls[i], herm_tol,
                      ("control Hamiltonian " + std::to_string(i)).c_str());
  }
}

Cmat ControlSystem::segment_hamiltonian(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != num_controls()) {
    throw std::invalid_argument("segment value count does not match control count");
  }
  Cmat h = drift;
  for (size_t i = 0; i < controls.size(); ++i) {
    h += values[i] * controls[i];
  }
  return h;
}

std::vector<Cmat> ControlSystem::algebra_generators() const {
  std::vector<Cmat> gens;
  gens.reserve(controls.size() + 1);
  gens.push_back(Cmat(complex(0, -1) * drift));
  for (const Cmat& h : controls) {
    gens.push_back(Cmat(complex(0, -1) * h));
  }
  return gens;
}

double ControlSchedule::total_duration() const {
  double t = 0.0;
  for (const Segment& s : segments) t += s.duration;
  return t;
}

void ControlSchedule::validate(int num_controls) const {
  for (size_t k = 0; k < segments.size(); ++k) {
    if (!(segments[k].duration > 0.0)) {
      throw std::invalid_argument("schedule segment " + std::to_string(k) +
                                  " has non-positive duration");
    }
    if (static_cast<int>(segments[k].values.size()) != num_controls) {
      throw std::invalid_argument("schedule segment " + std::to_string(k) +
                                  " has wrong number of control values");
    }
  }
}

Cmat propagate_unitary(const ControlSystem& sys, const ControlSchedule& sched) {
  sched.validate(sys.num_controls());
  Cmat u = Cmat::Identity(sys.n, sys.n);
  for (const ControlSchedule::Segment& seg : sched.segments) {
    const Cmat h = sys.segment_hamiltonian(seg.values);
    u = matrix_exp(Cmat(complex(0, -1) * h), seg.duration) * u;
  }
  return u;
}

Trajectory propagate_state(const ControlSystem& sys, const PureState& p0,
                           const ControlSchedule& sched, int samples_per_segment) {
  sched.validate(sys.num_controls());
  if (p0.dim() != sys.n) throw std::invalid_argument("propagate_state: dimension mismatch");
  if (samples_per_segment < 1) {
    throw std::invalid_argument("propagate_state: samples_per_segment must be >= 1");
  }
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(p0.projector());
  Cmat u = Cmat::Identity(sys.n, sys.n);
  double t = 0.0;
  for (const ControlSchedule::Segment& seg : sched.segments) {
    const Cmat h = sys.segment_hamiltonian(seg.values);
    const double dt = seg.duration / samples_per_segment;
    const Cmat e = matrix_exp(Cmat(complex(0, -1) * h), dt);
    for (int k = 0; k < samples_per_segment; ++k) {
      u = e * u;
      t += dt;
      const PureState p = p0.evolved(u);  // revalidates the projector invariants
      traj.times.push_back(t);
      traj.states.push_back(p.projector());
    }
  }
  return traj;
}

static Cmat nearest_projector(const Cmat& p) {
  Eigen::SelfAdjointEigenSolver<Cmat> es(0.5 * (p + Cmat(p.adjoint())));
  const Cvec psi = es.eigenvectors().col(p.rows() - 1);  // dominant eigenvector
  return psi * psi.adjoint();
}

Trajectory hamilton_flow_integrate(const ControlSystem& sys, const PureState& p0,
                                   const ControlSchedule& sched, double step) {
  sched.validate(sys.num_controls());
  if (p0.dim() != sys.n) {
    throw std::invalid_argument("hamilton_flow_integrate: dimension mismatch");
  }
  if (!(step > 0.0)) throw std::invalid_argument("hamilton_flow_integrate: step must be > 0");
  for (const ControlSchedule::Segment& seg : sched.segments) {
    if (step > seg.duration) {
      throw std::invalid_argument("hamilton_flow_integrate: step larger than a segment");
    }
  }

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(p0.projector());
  Cmat p = p0.projector();
  double t = 0.0;
  for (const ControlSchedule::Segment& seg : sched.segments) {
    const Cmat h = sys.segment_hamiltonian(seg.values);
    const auto field = [&h](const Cmat& x) { return Cmat(complex(0, -1) * commutator(h, x)); };
    const long nsteps = std::max<long>(1, std::lround(seg.duration / step));
    const double dt = seg.duration / static_cast<double>(nsteps);
    for (long k = 0; k < nsteps; ++k) {
      const Cmat k1 = field(p);
      const Cmat k2 = field(Cmat(p + 0.5 * dt * k1));
      const Cmat k3 = field(Cmat(p + 0.5 * dt * k2));
      const Cmat k4 = field(Cmat(p + dt * k3));
      p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += dt;
      traj.times.push_back(t);
      traj.states.push_back(p);
    }
    p = nearest_projector(p);
    traj.states.back() = p;
  }
  return traj;
}

double fidelity(const PureState& p, const PureState& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return (p.projector() * q.projector()).trace().real();
}

static ControlSchedule shooting_candidate(const ControlSystem& sys, int index, double horizon,
                                          std::uint64_t seed, const ShootingOptions& opts) {
  ControlSchedule sched;
  if (index == 0) return sched;  // empty schedule: stay put
  std::mt19937_64 eng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  const double dt = horizon / opts.segments;
  sched.segments.resize(static_cast<size_t>(opts.segments));
  for (auto& seg : sched.segments) {
    seg.duration = dt;
    seg.values.resize(static_cast<size_t>(sys.num_controls()));
    for (double& v : seg.values) {
      const double u01 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
      v = opts.u_max * (2.0 * u01 - 1.0);
    }
  }
  return sched;
}

ShootingResult random_shooting_reach(const ControlSystem& sys, const PureState& p0,
                                     const PureState& target, int budget, double horizon,
                                     std::uint64_t seed, const ShootingOptions& opts) {
  if (budget < 1) throw std::invalid_argument("random_shooting_reach: budget must be >= 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("random_shooting_reach: horizon must be > 0");
  if (p0.dim() != sys.n || target.dim() != sys.n) {
    throw std::invalid_argument("random_shooting_reach: dimension mismatch");
  }

  const int ncandidates = budget + 1;  // candidate 0 is the empty schedule
  std::vector<double> fid(static_cast<size_t>(ncandidates),
                          -std::numeric_limits<double>::infinity());
  for_each_index(ncandidates, opts.policy, [&](int idx) {
    const ControlSchedule sched = shooting_candidate(sys, idx, horizon, seed, opts);
    const Cmat u = propagate_unitary(sys, sched);
    fid[static_cast<size_t>(idx)] = fidelity(p0.evolved(u), target);
  });

  int best = 0;
  for (int i = 1; i < ncandidates; ++i) {
    if (fid[static_cast<size_t>(i)] > fid[static_cast<size_t>(best)]) best = i;
  }
  return ShootingResult{fid[static_cast<size_t>(best)],
                        shooting_candidate(sys, best, horizon, seed, opts), best};
}

}  // namespace qgc
