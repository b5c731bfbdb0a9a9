// Timing comparison of the serial reference kernels against the OpenMP
// versions. The two paths are required to agree bitwise (also enforced by
// the [parallel] tests); this binary reports throughput.

#include "qgc/accessibility.hpp"
#include "qgc/control_sim.hpp"
#include "qgc/lie_engine.hpp"
#include "qgc/parallel.hpp"
#include "qgc/projective.hpp"
#include "qgc/rng.hpp"

#include <omp.h>

#include <cstdio>
#include <string>

using namespace qgc;

namespace {

Cmat random_hermitian(int n, std::uint64_t seed) {
  GaussianStream g(seed);
  Cmat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = complex(g.next(), g.next());
  }
  return 0.5 * (m + Cmat(m.adjoint()));
}

struct Row {
  const char* name;
  double serial_s;
  double parallel_s;
  bool identical;
};

void print_row(const Row& r) {
  std::printf("%-24s %10.3f ms %10.3f ms   x%5.2f   %s\n", r.name, 1e3 * r.serial_s,
              1e3 * r.parallel_s, r.serial_s / r.parallel_s,
              r.identical ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", worker_threads());
  std::printf("%-24s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

  {
    const int n = 4;
    const GeometryContext ctx(n, 1.0);
    const Cmat a = random_hermitian(n, 1);
    Cmat r = random_hermitian(n, 2);
    r = r * r.adjoint();
    const MixedState sigma(Cmat(r / r.trace().real()));
    const long samples = 2000000;

    double t0 = omp_get_wtime();
    const McEstimate s = mc_expectation(a, sigma, ctx, samples, 9, ExecPolicy::serial);
    double t1 = omp_get_wtime();
    const McEstimate p = mc_expectation(a, sigma, ctx, samples, 9, ExecPolicy::parallel);
    double t2 = omp_get_wtime();
    print_row({"mc_expectation", t1 - t0, t2 - t1,
               s.estimate == p.estimate && s.std_error == p.std_error});
  }

  {
    const int n = 5;
    std::vector<Cmat> gens;
    for (int k = 0; k < 2; ++k) {
      gens.push_back(Cmat(complex(0, -1) * random_hermitian(n, 100 + k)));
    }
    const LieAlgebraBasis l = lie_closure(gens);
    const int points = 192;

    double t0 = omp_get_wtime();
    const RankConditionResult s = rank_condition(l, points, 9, {}, ExecPolicy::serial);
    double t1 = omp_get_wtime();
    const RankConditionResult p = rank_condition(l, points, 9, {}, ExecPolicy::parallel);
    double t2 = omp_get_wtime();
    print_row({"rank_condition", t1 - t0, t2 - t1, s.ranks == p.ranks});
  }

  {
    const int n = 4;
    const ControlSystem sys(random_hermitian(n, 200), {random_hermitian(n, 201)});
    const PureState p0 = PureState::basis_state(n, 0);
    const PureState target = PureState::basis_state(n, 1);
    const int budget = 20000;

    ShootingOptions serial_opts;
    serial_opts.policy = ExecPolicy::serial;
    double t0 = omp_get_wtime();
    const ShootingResult s = random_shooting_reach(sys, p0, target, budget, 6.0, 9, serial_opts);
    double t1 = omp_get_wtime();
    const ShootingResult p = random_shooting_reach(sys, p0, target, budget, 6.0, 9);
    double t2 = omp_get_wtime();
    print_row({"random_shooting_reach", t1 - t0, t2 - t1,
               s.best_fidelity == p.best_fidelity && s.best_index == p.best_index});
  }

  return 0;
}
