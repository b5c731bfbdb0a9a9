// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance below is pinned in code; seeds are fixed so the whole run
// is deterministic.

#include "qgc/accessibility.hpp"
#include "qgc/control_sim.hpp"
#include "qgc/io.hpp"
#include "qgc/lie_engine.hpp"
#include "qgc/projective.hpp"
#include "qgc/rng.hpp"
#include "support/oracles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qgc;
namespace orc = qgc::oracle;
namespace fs = std::filesystem;

namespace {

struct Harness {
  int failures = 0;

  void criterion(int idx, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

Cmat minus_i(const Cmat& h) { return Cmat(complex(0, -1) * h); }

std::vector<Cmat> gens_zx() { return {minus_i(orc::pauli_z()), minus_i(orc::pauli_x())}; }

std::vector<Cmat> gens_zxi() {
  auto g = gens_zx();
  g.push_back(minus_i(orc::identity(2)));
  return g;
}

std::vector<Cmat> gens_gm() {
  return {minus_i(orc::gell_mann_1()), minus_i(orc::gell_mann_3())};
}

std::vector<Cmat> gens_three_level() {
  Cmat h0 = Cmat::Zero(3, 3);
  h0(0, 0) = 1;
  h0(1, 1) = 2;
  h0(2, 2) = 4;
  Cmat h1 = Cmat::Zero(3, 3);
  h1(0, 1) = 1;
  h1(1, 0) = 1;
  h1(1, 2) = 1;
  h1(2, 1) = 1;
  return {minus_i(h0), minus_i(h1)};
}

ControlSystem system_from_gens(const std::vector<Cmat>& gens) {
  std::vector<Cmat> controls;
  for (size_t k = 1; k < gens.size(); ++k) {
    controls.push_back(Cmat(complex(0, 1) * gens[k]));
  }
  return ControlSystem(Cmat(complex(0, 1) * gens[0]), std::move(controls));
}

ControlSystem random_bounded_system(int n, std::uint64_t seed, double spectral_scale = 6.0) {
  Cmat h0 = orc::random_hermitian(n, seed);
  h0 *= spectral_scale / std::max(1.0, h0.operatorNorm());
  Cmat h1 = orc::random_hermitian(n, seed + 7777);
  h1 *= spectral_scale / std::max(1.0, h1.operatorNorm());
  return ControlSystem(std::move(h0), {std::move(h1)});
}

struct CmdResult {
  int exit_code = -1;
  bool exited = false;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QGC_BIN_PATH) + " " + args + " 2>/dev/null";
  CmdResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t nread = 0;
  while ((nread = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, nread);
  const int status = pclose(pipe);
  res.exited = WIFEXITED(status);
  if (res.exited) res.exit_code = WEXITSTATUS(status);
  return res;
}

}  // namespace

int main() {
  Harness h;

  h.criterion(1, "lie-closure dimensions match the bracket-enumeration oracle", [](std::string&) {
    bool ok = true;
    const std::vector<std::pair<std::vector<Cmat>, int>> cases = {
        {gens_zx(), 3}, {gens_zxi(), 4}, {gens_gm(), 3}, {gens_three_level(), 9}};
    for (const auto& [gens, want] : cases) {
      ok &= lie_closure(gens).dim() == want;
      ok &= orc::closure_dim(gens) == want;
    }
    return ok;
  });

  h.criterion(2, "operator and pure-state verdicts on the reference systems", [](std::string&) {
    const GeometryContext ctx2(2, 1.0);
    const GeometryContext ctx3(3, 1.0);
    const ControllabilityReport zx = analyze(system_from_gens(gens_zx()), ctx2);
    const ControllabilityReport zxi = analyze(system_from_gens(gens_zxi()), ctx2);
    const ControllabilityReport gm = analyze(system_from_gens(gens_gm()), ctx3);
    const ControllabilityReport full = analyze(system_from_gens(gens_three_level()), ctx3);
    bool ok = true;
    ok &= !zx.operator_controllable && zxi.operator_controllable;
    ok &= !gm.operator_controllable && full.operator_controllable;
    ok &= zx.pure_state_controllable;  // 3 - 1 = 2 = 2n-2
    ok &= !gm.pure_state_controllable; // 3 - 1 = 2 != 4
    ok &= zx.dim_L == 3 && zxi.dim_L == 4 && gm.dim_L == 3 && full.dim_L == 9;
    return ok;
  });

  h.criterion(3, "standard and Killing pure-state criteria agree; probe independent",
              [](std::string& detail) {
    std::mt19937_64 eng(60601);
    int agreements = 0;
    int total = 0;
    for (int trial = 0; trial < 54; ++trial) {
      const int n = 2 + trial % 3;
      const int count = 1 + static_cast<int>(eng() % 4);
      std::vector<Cmat> gens;
      for (int k = 0; k < count; ++k) gens.push_back(orc::random_anti_hermitian(n, eng()));
      const LieAlgebraBasis l = lie_closure(gens);
      const PureState p = PureState::basis_state(n, 0);
      const bool standard =
          l.dim() - subspace_intersection_dim(l, centralizer(p)) == 2 * n - 2;
      const bool killing = killing_pure_state_verdict(l, p).controllable;
      ++total;
      if (standard == killing) ++agreements;
    }
    bool ok = agreements == total && total >= 50;

    const LieAlgebraBasis controllable = lie_closure(gens_zx());
    const LieAlgebraBasis blocked = lie_closure(gens_gm());
    for (std::uint64_t s = 0; s < 20; ++s) {
      const PureState p2 = PureState::from_ket(orc::random_ket(2, 500000 + s));
      const LieAlgebraBasis c2 = centralizer(p2);
      ok &= controllable.dim() - subspace_intersection_dim(controllable, c2) == 2;
      const PureState p3 = PureState::from_ket(orc::random_ket(3, 600000 + s));
      const LieAlgebraBasis c3 = centralizer(p3);
      ok &= blocked.dim() - subspace_intersection_dim(blocked, c3) != 4;
    }
    std::ostringstream os;
    os << agreements << "/" << total << " agreements";
    detail = os.str();
    return ok;
  });

  h.criterion(4, "rank condition matches the algebraic criterion and kernel dimensions",
              [](std::string&) {
    bool ok = true;
    std::vector<std::vector<Cmat>> all_gens = {gens_zx(), gens_zxi(), gens_gm(),
                                               gens_three_level()};
    std::mt19937_64 eng(120120);
    for (int extra = 0; extra < 6; ++extra) {
      const int n = 2 + extra % 3;
      std::vector<Cmat> gens;
      const int count = 1 + static_cast<int>(eng() % 3);
      for (int k = 0; k < count; ++k) gens.push_back(orc::random_anti_hermitian(n, eng()));
      all_gens.push_back(std::move(gens));
    }
    for (size_t idx = 0; idx < all_gens.size(); ++idx) {
      const LieAlgebraBasis l = lie_closure(all_gens[idx]);
      const int n = l.dim_hilbert;
      const RankConditionResult res = rank_condition(l, 16, 42 + idx);
      ok &= res.holds == res.algebraic_full;
      // sampled tangent ranks equal dim L - dim(L n c_p) pointwise
      std::vector<PureState> points;
      points.push_back(PureState::basis_state(n, 0));
      for (PureState& p : haar_sample(n, 42 + idx, 16)) points.push_back(std::move(p));
      for (size_t i = 0; i < points.size(); ++i) {
        const int expected =
            l.dim() - subspace_intersection_dim(l, centralizer(points[i]));
        ok &= res.ranks[i] == expected;
      }
    }
    return ok;
  });

  h.criterion(5, "Killing algebra dimension n^2 - 1 for n = 2..6", [](std::string&) {
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
      ok &= phi_dimension(full_unitary_algebra(n)) == n * n - 1;
    }
    return ok;
  });

  h.criterion(6, "Monte-Carlo expectation identity and second moment within 4 sigma",
              [](std::string& detail) {
    bool ok = true;
    int runs = 0;
    double worst_z = 0.0;
    for (int n : {2, 3}) {
      for (int pair = 0; pair < 10; ++pair) {
        const Cmat a = orc::random_hermitian(n, 700000 + 10 * n + pair);
        Cmat r = orc::random_hermitian(n, 710000 + 10 * n + pair);
        r = r * r.adjoint();
        Cmat rho = r / r.trace().real();
        const MixedState sigma(rho);
        const double exact = (a * rho).trace().real();
        for (double kappa : {1.0, 3.0, static_cast<double>(n + 1)}) {
          const GeometryContext ctx(n, kappa);
          const McEstimate est =
              mc_expectation(a, sigma, ctx, 100000, 800000 + runs);
          const double z = std::abs(est.estimate - exact) / std::max(est.std_error, 1e-300);
          worst_z = std::max(worst_z, z);
          ok &= z <= 4.0;
          ++runs;
        }
      }
    }
    // second moment vs the closed form, plus the quadrature cross-check at n=2
    for (int n : {2, 3}) {
      const Cmat a = orc::random_hermitian(n, 720001 + n);
      const Cmat b = orc::random_hermitian(n, 730001 + n);
      const double formula = ((a * b).trace().real() + a.trace().real() * b.trace().real()) /
                             (n * (n + 1.0));
      if (n == 2) ok &= std::abs(formula - orc::bloch_second_moment(a, b)) < 1e-10;
      double sum = 0.0;
      double sumsq = 0.0;
      const int count = 100000;
      for (const PureState& p : haar_sample(n, 740000 + n, count)) {
        const double x =
            (a * p.projector()).trace().real() * (b * p.projector()).trace().real();
        sum += x;
        sumsq += x * x;
      }
      const double mean = sum / count;
      const double se =
          std::sqrt(std::max(0.0, (sumsq - count * mean * mean) / (count - 1.0)) / count);
      const double z = std::abs(mean - formula) / std::max(se, 1e-300);
      worst_z = std::max(worst_z, z);
      ok &= z <= 4.0;
    }
    std::ostringstream os;
    os << runs + 2 << " runs, worst |z| = " << worst_z;
    detail = os.str();
    return ok;
  });

  h.criterion(7, "Schroedinger and Hamilton flows agree; RK4 converges at order 4",
              [](std::string& detail) {
    bool ok = true;
    double worst_dev = 0.0;
    double worst_lo = 100.0;
    double worst_hi = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + trial % 3;
      const ControlSystem sys = random_bounded_system(n, 900000 + trial);
      const PureState p0 = PureState::from_ket(orc::random_ket(n, 910000 + trial));
      ControlSchedule sched;
      sched.segments.push_back({1.0, {0.8}});
      const Trajectory coarse = hamilton_flow_integrate(sys, p0, sched, 1e-3);
      const Trajectory exact_coarse = propagate_state(sys, p0, sched, 1000);
      double dev_coarse = 0.0;
      for (size_t k = 0; k < coarse.states.size(); ++k) {
        dev_coarse = std::max(dev_coarse, (coarse.states[k] - exact_coarse.states[k]).norm());
      }
      worst_dev = std::max(worst_dev, dev_coarse);
      ok &= dev_coarse <= 1e-8;

      const Trajectory fine = hamilton_flow_integrate(sys, p0, sched, 5e-4);
      const Trajectory exact_fine = propagate_state(sys, p0, sched, 2000);
      double dev_fine = 0.0;
      for (size_t k = 0; k < fine.states.size(); ++k) {
        dev_fine = std::max(dev_fine, (fine.states[k] - exact_fine.states[k]).norm());
      }
      const double ratio = dev_coarse / std::max(dev_fine, 1e-300);
      worst_lo = std::min(worst_lo, ratio);
      worst_hi = std::max(worst_hi, ratio);
      ok &= ratio >= 8.0 && ratio <= 32.0;
    }
    std::ostringstream os;
    os << "max deviation " << worst_dev << ", halving ratios in [" << worst_lo << ", "
       << worst_hi << "]";
    detail = os.str();
    return ok;
  });

  h.criterion(8, "geometric tensor properties at 1e-10 across random instances",
              [](std::string&) {
    bool ok = true;
    std::mt19937_64 eng(1010101);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + trial % 3;
      const double kappa = trial % 2 == 0 ? 1.0 : 2.5;
      const GeometryContext ctx(n, kappa);
      const PureState p = PureState::from_ket(orc::random_ket(n, eng()));
      const TangentVector u = tangent_from_generator(orc::random_hermitian(n, eng()), p);
      const TangentVector v = tangent_from_generator(orc::random_hermitian(n, eng()), p);

      const double w = symplectic_form(u, v, ctx);
      const double g = fubini_study_metric(u, v, ctx);
      ok &= std::abs(w + symplectic_form(v, u, ctx)) <= 1e-10;
      ok &= std::abs(g - fubini_study_metric(v, u, ctx)) <= 1e-10;

      const Cmat shift = orc::random_commutant_hermitian(p, eng());
      const TangentVector u2 = tangent_from_generator(Cmat(u.generator + shift), p);
      ok &= std::abs(symplectic_form(u2, v, ctx) - w) <= 1e-10 * std::max(1.0, std::abs(w));
      ok &= std::abs(fubini_study_metric(u2, v, ctx) - g) <=
            1e-10 * std::max(1.0, std::abs(g));

      const double guu = fubini_study_metric(u, u, ctx);
      const double quad =
          2.0 * kappa * (p.projector() * u.matrix * u.matrix).trace().real();
      ok &= std::abs(guu - quad) <= 1e-10 * std::max(1.0, std::abs(guu));

      ok &= isometry_check(orc::random_hermitian(n, eng()), p, u, v, 0.9, ctx) <= 1e-10;
    }
    // positive definiteness on a full tangent basis
    for (int n : {2, 3, 4}) {
      const GeometryContext ctx(n, 1.0);
      const PureState p = PureState::from_ket(orc::random_ket(n, 123321 + n));
      Eigen::SelfAdjointEigenSolver<Cmat> es(p.projector());
      const Cvec psi = es.eigenvectors().col(n - 1);
      std::vector<TangentVector> basis;
      for (int k = 0; k < n - 1; ++k) {
        const Cvec phi = es.eigenvectors().col(k);
        basis.push_back(
            tangent_from_generator(Cmat(psi * phi.adjoint() + phi * psi.adjoint()), p));
        basis.push_back(tangent_from_generator(
            Cmat(complex(0, 1) * (psi * phi.adjoint() - phi * psi.adjoint())), p));
      }
      const int d = 2 * n - 2;
      Eigen::MatrixXd gram(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          gram(i, j) = fubini_study_metric(basis[static_cast<size_t>(i)],
                                           basis[static_cast<size_t>(j)], ctx);
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram);
      ok &= ges.eigenvalues().minCoeff() > 0.0;
    }
    return ok;
  });

  h.criterion(9, "random shooting reaches the reachable target and not the decoupled one",
              [](std::string& detail) {
    const ControlSystem sys(orc::pauli_z(), {orc::pauli_x()});
    const PureState p0 = PureState::basis_state(2, 0);
    Cvec plus(2);
    plus << 1, 1;
    const ShootingResult reach = random_shooting_reach(
        sys, p0, PureState::from_ket(plus), 2000, 2.0 * std::numbers::pi, 20250);

    const ControlSystem blocked(orc::gell_mann_1(), {orc::gell_mann_3()});
    const ShootingResult stuck =
        random_shooting_reach(blocked, PureState::basis_state(3, 0),
                              PureState::basis_state(3, 2), 2000, 2.0 * std::numbers::pi, 20250);
    std::ostringstream os;
    os << "reachable best " << reach.best_fidelity << ", decoupled best " << stuck.best_fidelity;
    detail = os.str();
    return reach.best_fidelity >= 0.99 && stuck.best_fidelity <= 0.05;
  });

  h.criterion(10, "CLI determinism, exit codes, and fuzz survival", [](std::string&) {
    const fs::path dir =
        fs::temp_directory_path() / ("qgc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto write = [&dir](const std::string& name, const std::string& content) {
      const fs::path p = dir / name;
      std::ofstream out(p, std::ios::binary);
      out << content;
      return p.string();
    };

    bool ok = true;
    json sysj;
    sysj["dim"] = 2;
    sysj["drift"] = matrix_to_json(orc::pauli_z());
    sysj["controls"] = json::array({matrix_to_json(orc::pauli_x())});
    const std::string sys = write("sys.json", sysj.dump());

    const CmdResult a = run_cli("analyze " + sys + " --seed 4 --samples 12");
    const CmdResult b = run_cli("analyze " + sys + " --seed 4 --samples 12");
    ok &= a.exited && b.exited && a.exit_code == 0 && a.out == b.out && !a.out.empty();

    ok &= run_cli("analyze " + write("broken.json", "{nope")).exit_code == 2;

    json nonherm = sysj;
    nonherm["drift"][0][1] = json::array({0.3, 0.0});
    nonherm["drift"][1][0] = json::array({0.7, 0.0});
    ok &= run_cli("analyze " + write("nonherm.json", nonherm.dump())).exit_code == 3;

    std::mt19937_64 eng(31415);
    const std::string alphabet = "{}[]\",:0123456789.eE+-truefalsenul dimdriftcontrols";
    for (int trial = 0; trial < 20; ++trial) {
      std::string noise;
      const size_t len = eng() % 160;
      for (size_t i = 0; i < len; ++i) noise.push_back(alphabet[eng() % alphabet.size()]);
      const CmdResult r = run_cli("analyze " + write("fuzz.json", noise));
      ok &= r.exited && (r.exit_code == 0 || r.exit_code == 2 || r.exit_code == 3);
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    return ok;
  });

  if (h.failures == 0) {
    std::printf("all %d criteria passed\n", 10);
  } else {
    std::printf("%d criteria FAILED\n", h.failures);
  }
  return h.failures;
}
