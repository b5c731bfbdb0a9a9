#include <catch2/catch_amalgamated.hpp>

#include "qgc/accessibility.hpp"
#include "qgc/control_sim.hpp"
#include "qgc/parallel.hpp"
#include "qgc/projective.hpp"
#include "support/oracles.hpp"

#include <cstdlib>

using namespace qgc;
namespace orc = qgc::oracle;

TEST_CASE("parallel and serial monte-carlo estimates are bit-identical", "[parallel]") {
  const int n = 3;
  const GeometryContext ctx(n, 1.0);
  const Cmat a = orc::random_hermitian(n, 1);
  Cmat rho = orc::random_hermitian(n, 2);
  rho = rho * rho.adjoint();
  rho /= rho.trace().real();
  const MixedState sigma(rho);

  const McEstimate serial = mc_expectation(a, sigma, ctx, 50000, 99, ExecPolicy::serial);
  const McEstimate parallel = mc_expectation(a, sigma, ctx, 50000, 99, ExecPolicy::parallel);
  CHECK(serial.estimate == parallel.estimate);
  CHECK(serial.std_error == parallel.std_error);
  CHECK(serial.samples == parallel.samples);
}

TEST_CASE("parallel and serial rank sampling agree exactly", "[parallel]") {
  const LieAlgebraBasis l = lie_closure(
      {Cmat(complex(0, -1) * orc::gell_mann_1()), Cmat(complex(0, -1) * orc::gell_mann_3())});
  const RankConditionResult serial = rank_condition(l, 24, 5, {}, ExecPolicy::serial);
  const RankConditionResult parallel = rank_condition(l, 24, 5, {}, ExecPolicy::parallel);
  CHECK(serial.ranks == parallel.ranks);
  CHECK(serial.min_rank == parallel.min_rank);
  CHECK(serial.holds == parallel.holds);
  REQUIRE(serial.witness.has_value() == parallel.witness.has_value());
  if (serial.witness.has_value()) {
    CHECK((serial.witness->projector() - parallel.witness->projector()).norm() == 0.0);
  }
}

TEST_CASE("parallel and serial shooting pick the same candidate", "[parallel]") {
  const ControlSystem sys(orc::pauli_z(), {orc::pauli_x()});
  const PureState p0 = PureState::basis_state(2, 0);
  const PureState target = PureState::basis_state(2, 1);
  ShootingOptions serial_opts;
  serial_opts.policy = ExecPolicy::serial;
  const ShootingResult s = random_shooting_reach(sys, p0, target, 400, 4.0, 13, serial_opts);
  const ShootingResult p = random_shooting_reach(sys, p0, target, 400, 4.0, 13);
  CHECK(s.best_fidelity == p.best_fidelity);
  CHECK(s.best_index == p.best_index);
}

TEST_CASE("QGC_THREADS caps the worker count", "[parallel]") {
  setenv("QGC_THREADS", "1", 1);
  CHECK(worker_threads() == 1);
  setenv("QGC_THREADS", "not-a-number", 1);
  CHECK(worker_threads() >= 1);
  unsetenv("QGC_THREADS");
  CHECK(worker_threads() >= 1);
}
