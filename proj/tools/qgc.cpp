#include "qgc/accessibility.hpp"
#include "qgc/control_sim.hpp"
#include "qgc/io.hpp"
#include "qgc/lie_engine.hpp"
#include "qgc/projective.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 2;
constexpr int kExitInvalid = 3;

struct CommonFlags {
  double kappa = 1.0;
  double rank_tol = qgc::Tolerances{}.rank_tol;
  std::uint64_t seed = 0;
};

qgc::Tolerances make_tolerances(const CommonFlags& flags) {
  qgc::Tolerances tol;
  tol.rank_tol = flags.rank_tol;
  tol.validate();
  return tol;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qgc::ParseError("cannot open output file: " + path);
  out << text;
}

int run_analyze(const std::string& system_path, const CommonFlags& flags, int samples,
                const std::string& probe_path, const std::string& format) {
  const std::string bytes = qgc::read_file(system_path);
  const qgc::Tolerances tol = make_tolerances(flags);
  const qgc::ControlSystem sys = qgc::system_from_json(qgc::json::parse(bytes), tol);
  const qgc::GeometryContext ctx(sys.n, flags.kappa, tol);

  qgc::PureState probe = qgc::PureState::basis_state(sys.n, 0);
  if (!probe_path.empty()) {
    probe = qgc::pure_state_from_matrix(qgc::load_matrix_file(probe_path, "probe state"),
                                        "probe state");
    if (probe.dim() != sys.n) {
      throw qgc::ParseError("probe state dimension does not match the system");
    }
  }

  qgc::ReportFile report;
  report.input_digest = qgc::digest_hex(bytes);
  report.geometry = ctx;
  report.seed = flags.seed;
  report.controllability = qgc::analyze(sys, probe, ctx);
  const qgc::LieAlgebraBasis l = qgc::lie_closure(sys.algebra_generators(), tol);
  report.accessibility = qgc::rank_condition(l, samples, flags.seed, tol);
  report.accessibility_samples = samples;
  report.corollary_killing_algebra = qgc::corollary_check(l, 4, flags.seed, tol);
  report.diagnostics = report.controllability.diagnostics;

  if (format == "text") {
    std::cout << qgc::report_to_text(report);
  } else {
    std::cout << qgc::report_to_json(report).dump(2) << "\n";
  }
  return kExitOk;
}

int run_simulate(const std::string& system_path, const std::string& schedule_path, double dt,
                 bool compare_flows, const std::string& output_path, const CommonFlags& flags) {
  const qgc::Tolerances tol = make_tolerances(flags);
  const qgc::ControlSystem sys = qgc::load_system(system_path, tol);
  const qgc::ControlSchedule sched = qgc::load_schedule(schedule_path, sys.num_controls());
  if (sched.segments.empty()) throw qgc::ParseError("schedule has no segments");
  if (!(dt > 0.0)) throw qgc::ParseError("--dt must be positive");

  const qgc::PureState p0 = qgc::PureState::basis_state(sys.n, 0);
  // One exact sample per integrator step keeps the two grids aligned.
  double min_duration = sched.segments.front().duration;
  for (const auto& seg : sched.segments) min_duration = std::min(min_duration, seg.duration);
  const double step = std::min(dt, min_duration);

  qgc::Trajectory exact;
  {
    qgc::Trajectory assembled;
    assembled.times.push_back(0.0);
    assembled.states.push_back(p0.projector());
    double t = 0.0;
    qgc::Cmat u = qgc::Cmat::Identity(sys.n, sys.n);
    for (const auto& seg : sched.segments) {
      const long nsteps = std::max<long>(1, std::lround(seg.duration / step));
      const double h = seg.duration / static_cast<double>(nsteps);
      const qgc::Cmat e =
          qgc::matrix_exp(qgc::Cmat(qgc::complex(0, -1) * sys.segment_hamiltonian(seg.values)), h);
      for (long k = 0; k < nsteps; ++k) {
        u = e * u;
        t += h;
        assembled.times.push_back(t);
        assembled.states.push_back(p0.evolved(u).projector());
      }
    }
    exact = std::move(assembled);
  }

  qgc::json out = qgc::trajectory_to_json(exact);
  if (compare_flows) {
    const qgc::Trajectory integrated = qgc::hamilton_flow_integrate(sys, p0, sched, step);
    double max_dev = 0.0;
    const size_t shared = std::min(exact.states.size(), integrated.states.size());
    for (size_t k = 0; k < shared; ++k) {
      max_dev = std::max(max_dev, (exact.states[k] - integrated.states[k]).norm());
    }
    qgc::json cmp;
    cmp["step"] = step;
    cmp["max_frobenius_deviation"] = max_dev;
    cmp["within_ode_tol"] = max_dev <= tol.ode_tol;
    out["flow_comparison"] = std::move(cmp);
  }
  write_text_file(output_path, out.dump(2) + "\n");

  qgc::json summary;
  summary["output"] = output_path;
  summary["samples"] = exact.times.size();
  if (compare_flows) summary["flow_comparison"] = out["flow_comparison"];
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int run_expectation(const std::string& observable_path, const std::string& state_path,
                    const CommonFlags& flags, long mc_samples) {
  const qgc::Tolerances tol = make_tolerances(flags);
  const qgc::Cmat a = qgc::load_matrix_file(observable_path, "observable");
  qgc::require_hermitian_input(a, "observable", tol.herm_tol);
  const qgc::Cmat sm = qgc::load_matrix_file(state_path, "state");
  const qgc::MixedState sigma = qgc::mixed_state_from_matrix(sm, "state");
  if (sigma.dim() != a.rows()) {
    throw qgc::ParseError("observable and state dimensions do not match");
  }

  const qgc::GeometryContext ctx(sigma.dim(), flags.kappa, tol);
  const double exact = (a * sigma.density()).trace().real();
  const qgc::McEstimate mc = qgc::mc_expectation(a, sigma, ctx, mc_samples, flags.seed);
  const double abs_error = std::abs(mc.estimate - exact);
  const bool pass = abs_error <= std::max(4.0 * mc.std_error, 1e-12);

  qgc::json j;
  j["exact_trace"] = exact;
  j["estimate"] = mc.estimate;
  j["std_error"] = mc.std_error;
  j["abs_error"] = abs_error;
  j["pass_4_sigma"] = pass;
  j["kappa"] = ctx.kappa;
  j["samples"] = mc.samples;
  j["seed"] = flags.seed;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int run_rank(const std::string& system_path, const CommonFlags& flags, int points,
             const std::string& state_path) {
  const std::string bytes = qgc::read_file(system_path);
  const qgc::Tolerances tol = make_tolerances(flags);
  const qgc::ControlSystem sys = qgc::system_from_json(qgc::json::parse(bytes), tol);
  const qgc::LieAlgebraBasis l = qgc::lie_closure(sys.algebra_generators(), tol);

  qgc::json j;
  j["input_digest"] = qgc::digest_hex(bytes);
  j["dim_L"] = l.dim();
  j["tangent_target"] = 2 * sys.n - 2;
  j["seed"] = flags.seed;
  if (!state_path.empty()) {
    const qgc::PureState p = qgc::pure_state_from_matrix(
        qgc::load_matrix_file(state_path, "state"), "state");
    if (p.dim() != sys.n) throw qgc::ParseError("state dimension does not match the system");
    const qgc::TangentSubspace sub = qgc::accessibility_distribution(l, p, tol);
    j["mode"] = "single-point";
    j["rank"] = sub.rank;
  } else {
    const qgc::RankConditionResult res = qgc::rank_condition(l, points, flags.seed, tol);
    j["mode"] = "sampled";
    j["points"] = points;
    j["per_point_ranks"] = res.ranks;
    j["min_rank"] = res.min_rank;
    j["holds"] = res.holds;
    j["algebraic_full_rank"] = res.algebraic_full;
    j["witness"] = res.witness.has_value() ? qgc::matrix_to_json(res.witness->projector())
                                           : qgc::json(nullptr);
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controllability analysis of bilinear quantum systems on projective space"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string system_path;
  std::string probe_path;
  std::string format = "json";
  int samples = 32;

  CLI::App* analyze = app.add_subcommand("analyze", "Controllability verdicts for a system file");
  analyze->add_option("system", system_path, "SystemFile JSON path")->required();
  analyze->add_option("--kappa", flags.kappa, "Phase-space scale kappa (> 0)");
  analyze->add_option("--tol", flags.rank_tol, "Relative rank tolerance");
  analyze->add_option("--samples", samples, "Random points for the rank condition");
  analyze->add_option("--seed", flags.seed, "RNG seed (echoed in the report)");
  analyze->add_option("--probe", probe_path, "Probe pure state (MatrixFile JSON)");
  analyze->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string schedule_path;
  std::string output_path;
  double dt = 1e-3;
  bool compare_flows = false;
  CLI::App* simulate = app.add_subcommand("simulate", "Propagate a state along a schedule");
  simulate->add_option("system", system_path, "SystemFile JSON path")->required();
  simulate->add_option("--schedule", schedule_path, "ScheduleFile JSON path")->required();
  simulate->add_option("--dt", dt, "Sampling/integration step");
  simulate->add_flag("--compare-flows", compare_flows,
                     "Also integrate the Hamiltonian flow and report the deviation");
  simulate->add_option("--output", output_path, "Trajectory output path")->required();

  std::string observable_path;
  std::string state_path;
  long mc_samples = 100000;
  CLI::App* expectation =
      app.add_subcommand("expectation", "Monte-Carlo check of the expectation identity");
  expectation->add_option("--observable", observable_path, "Observable (MatrixFile JSON)")
      ->required();
  expectation->add_option("--state", state_path, "Density matrix (MatrixFile JSON)")->required();
  expectation->add_option("--kappa", flags.kappa, "Phase-space scale kappa (> 0)");
  expectation->add_option("--mc-samples", mc_samples, "Monte-Carlo sample count");
  expectation->add_option("--seed", flags.seed, "RNG seed (echoed in the report)");

  int points = 32;
  std::string rank_state_path;
  CLI::App* rank = app.add_subcommand("rank", "Accessibility-distribution ranks");
  rank->add_option("system", system_path, "SystemFile JSON path")->required();
  rank->add_option("--points", points, "Number of sampled points");
  rank->add_option("--seed", flags.seed, "RNG seed (echoed in the report)");
  rank->add_option("--state", rank_state_path, "Evaluate at this state only (MatrixFile JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  try {
    if (app.got_subcommand(analyze)) {
      if (!(flags.kappa > 0.0)) throw qgc::ParseError("--kappa must be positive");
      return run_analyze(system_path, flags, samples, probe_path, format);
    }
    if (app.got_subcommand(simulate)) {
      return run_simulate(system_path, schedule_path, dt, compare_flows, output_path, flags);
    }
    if (app.got_subcommand(expectation)) {
      if (!(flags.kappa > 0.0)) throw qgc::ParseError("--kappa must be positive");
      return run_expectation(observable_path, state_path, flags, mc_samples);
    }
    if (app.got_subcommand(rank)) {
      return run_rank(system_path, flags, points, rank_state_path);
    }
  } catch (const qgc::SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const qgc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;
}
