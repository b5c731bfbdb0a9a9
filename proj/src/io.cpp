#include "qgc/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qgc {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

static json parse_json(const std::string& text, const std::string& context) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(context + ": invalid JSON: " + e.what());
  }
}

json matrix_to_json(const Cmat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Cmat matrix_from_json(const json& j, const std::string& name, int expected_dim) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(name + ": expected a non-empty array of rows");
  }
  const int n = static_cast<int>(j.size());
  if (expected_dim >= 0 && n != expected_dim) {
    throw ParseError(name + ": has " + std::to_string(n) + " rows, expected " +
                     std::to_string(expected_dim));
  }
  Cmat m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError(name + " row " + std::to_string(i) + ": expected " + std::to_string(n) +
                       " entries");
    }
    for (int k = 0; k < n; ++k) {
      const json& entry = row[static_cast<size_t>(k)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ParseError(name + "[" + std::to_string(i) + "][" + std::to_string(k) +
                         "]: expected a [re, im] pair of numbers");
      }
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ParseError(name + "[" + std::to_string(i) + "][" + std::to_string(k) +
                         "]: non-finite entry");
      }
      m(i, k) = complex(re, im);
    }
  }
  return m;
}

void require_hermitian_input(const Cmat& m, const std::string& name, double herm_tol) {
  const Cmat d = m - m.adjoint();
  const double scale = std::max(1.0, m.norm());
  if (d.norm() <= herm_tol * scale) return;
  Eigen::Index wi = 0;
  Eigen::Index wj = 0;
  double worst = -1.0;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (std::abs(d(i, j)) > worst) {
        worst = std::abs(d(i, j));
        wi = i;
        wj = j;
      }
    }
  }
  std::ostringstream os;
  os << name << ": not Hermitian; worst entry " << name << "[" << wi << "][" << wj
     << "] differs from its transpose conjugate by " << worst;
  throw SemanticError(os.str());
}

ControlSystem system_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) throw ParseError("system file: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ParseError("system file: missing integer field 'dim'");
  }
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw ParseError("system file: 'dim' must be positive");
  if (!j.contains("drift")) throw ParseError("system file: missing field 'drift'");
  Cmat drift = matrix_from_json(j["drift"], "drift", dim);
  std::vector<Cmat> controls;
  if (j.contains("controls")) {
    if (!j["controls"].is_array()) throw ParseError("system file: 'controls' must be an array");
    int idx = 0;
    for (const json& cj : j["controls"]) {
      controls.push_back(matrix_from_json(cj, "controls[" + std::to_string(idx) + "]", dim));
      ++idx;
    }
  }
  require_hermitian_input(drift, "drift", tol.herm_tol);
  for (size_t i = 0; i < controls.size(); ++i) {
    require_hermitian_input(controls[i], "controls[" + std::to_string(i) + "]", tol.herm_tol);
  }
  return ControlSystem(std::move(drift), std::move(controls), tol.herm_tol);
}

ControlSystem load_system(const std::string& path, const Tolerances& tol) {
  return system_from_json(parse_json(read_file(path), path), tol);
}

json system_to_json(const ControlSystem& sys) {
  json j;
  j["dim"] = sys.n;
  j["drift"] = matrix_to_json(sys.drift);
  json controls = json::array();
  for (const Cmat& h : sys.controls) controls.push_back(matrix_to_json(h));
  j["controls"] = std::move(controls);
  return j;
}

ControlSchedule schedule_from_json(const json& j, int num_controls) {
  if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array()) {
    throw ParseError("schedule file: expected an object with a 'segments' array");
  }
  ControlSchedule sched;
  int idx = 0;
  for (const json& sj : j["segments"]) {
    if (!sj.is_object() || !sj.contains("duration") || !sj["duration"].is_number()) {
      throw ParseError("schedule segment " + std::to_string(idx) +
                       ": expected an object with numeric 'duration'");
    }
    ControlSchedule::Segment seg;
    seg.duration = sj["duration"].get<double>();
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      throw ParseError("schedule segment " + std::to_string(idx) +
                       ": duration must be positive and finite");
    }
    if (sj.contains("values")) {
      if (!sj["values"].is_array()) {
        throw ParseError("schedule segment " + std::to_string(idx) + ": 'values' must be an array");
      }
      for (const json& v : sj["values"]) {
        if (!v.is_number()) {
          throw ParseError("schedule segment " + std::to_string(idx) +
                           ": control values must be numbers");
        }
        seg.values.push_back(v.get<double>());
      }
    }
    if (static_cast<int>(seg.values.size()) != num_controls) {
      throw ParseError("schedule segment " + std::to_string(idx) + ": has " +
                       std::to_string(seg.values.size()) + " control values, system has " +
                       std::to_string(num_controls));
    }
    sched.segments.push_back(std::move(seg));
    ++idx;
  }
  return sched;
}

ControlSchedule load_schedule(const std::string& path, int num_controls) {
  return schedule_from_json(parse_json(read_file(path), path), num_controls);
}

json schedule_to_json(const ControlSchedule& sched) {
  json segs = json::array();
  for (const auto& seg : sched.segments) {
    json sj;
    sj["duration"] = seg.duration;
    sj["values"] = seg.values;
    segs.push_back(std::move(sj));
  }
  json j;
  j["segments"] = std::move(segs);
  return j;
}

Cmat load_matrix_file(const std::string& path, const std::string& role) {
  const json j = parse_json(read_file(path), path);
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() ||
      !j.contains("matrix")) {
    throw ParseError(role + " file " + path + ": expected {\"dim\": n, \"matrix\": [...]}");
  }
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw ParseError(role + " file " + path + ": 'dim' must be positive");
  return matrix_from_json(j["matrix"], role, dim);
}

MixedState mixed_state_from_matrix(const Cmat& m, const std::string& name) {
  require_hermitian_input(m, name, 1e-10);
  try {
    return MixedState(m);
  } catch (const std::invalid_argument& e) {
    throw SemanticError(name + ": " + e.what());
  }
}

PureState pure_state_from_matrix(const Cmat& m, const std::string& name) {
  try {
    return PureState(m);
  } catch (const std::invalid_argument& e) {
    throw SemanticError(name + ": " + e.what());
  }
}

json report_to_json(const ReportFile& report) {
  json j;
  j["tool_version"] = report.tool_version;
  j["input_digest"] = report.input_digest;
  j["seed"] = report.seed;
  json g;
  g["n"] = report.geometry.n;
  g["kappa"] = report.geometry.kappa;
  g["kappa_prime"] = report.geometry.kappa_prime;
  g["herm_tol"] = report.geometry.tol.herm_tol;
  g["rank_tol"] = report.geometry.tol.rank_tol;
  g["ode_tol"] = report.geometry.tol.ode_tol;
  j["geometry"] = std::move(g);
  json c;
  c["dim_L"] = report.controllability.dim_L;
  c["contains_identity_direction"] = report.controllability.contains_identity_direction;
  c["dim_centralizer_intersection"] = report.controllability.dim_centralizer_intersection;
  c["operator_controllable"] = report.controllability.operator_controllable;
  c["pure_state_controllable"] = report.controllability.pure_state_controllable;
  c["killing_criterion_value"] = report.controllability.killing_criterion_value;
  c["rank_condition_holds"] = report.controllability.rank_condition_holds;
  j["controllability"] = std::move(c);
  json a;
  a["samples"] = report.accessibility_samples;
  a["seed"] = report.accessibility.seed;
  a["holds"] = report.accessibility.holds;
  a["min_rank"] = report.accessibility.min_rank;
  a["algebraic_full_rank"] = report.accessibility.algebraic_full;
  a["per_point_ranks"] = report.accessibility.ranks;
  a["witness"] = report.accessibility.witness.has_value()
                     ? matrix_to_json(report.accessibility.witness->projector())
                     : json(nullptr);
  a["corollary_killing_algebra"] = report.corollary_killing_algebra;
  j["accessibility"] = std::move(a);
  j["diagnostics"] = report.diagnostics;
  return j;
}

ReportFile report_from_json(const json& j) {
  ReportFile r;
  try {
    r.tool_version = j.at("tool_version").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const json& g = j.at("geometry");
    Tolerances tol;
    tol.herm_tol = g.at("herm_tol").get<double>();
    tol.rank_tol = g.at("rank_tol").get<double>();
    tol.ode_tol = g.at("ode_tol").get<double>();
    r.geometry = GeometryContext(g.at("n").get<int>(), g.at("kappa").get<double>(), tol);
    const json& c = j.at("controllability");
    r.controllability.n = r.geometry.n;
    r.controllability.dim_L = c.at("dim_L").get<int>();
    r.controllability.contains_identity_direction =
        c.at("contains_identity_direction").get<bool>();
    r.controllability.dim_centralizer_intersection =
        c.at("dim_centralizer_intersection").get<int>();
    r.controllability.operator_controllable = c.at("operator_controllable").get<bool>();
    r.controllability.pure_state_controllable = c.at("pure_state_controllable").get<bool>();
    r.controllability.killing_criterion_value = c.at("killing_criterion_value").get<int>();
    r.controllability.rank_condition_holds = c.at("rank_condition_holds").get<bool>();
    const json& a = j.at("accessibility");
    r.accessibility_samples = a.at("samples").get<int>();
    r.accessibility.seed = a.at("seed").get<std::uint64_t>();
    r.accessibility.holds = a.at("holds").get<bool>();
    r.accessibility.min_rank = a.at("min_rank").get<int>();
    r.accessibility.algebraic_full = a.at("algebraic_full_rank").get<bool>();
    r.accessibility.ranks = a.at("per_point_ranks").get<std::vector<int>>();
    if (!a.at("witness").is_null()) {
      r.accessibility.witness = PureState(matrix_from_json(a.at("witness"), "witness"));
    }
    r.corollary_killing_algebra = a.at("corollary_killing_algebra").get<bool>();
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return r;
}

std::string report_to_text(const ReportFile& report) {
  const auto& c = report.controllability;
  const int n = report.geometry.n;
  std::ostringstream os;
  os << "qgc " << report.tool_version << "  (input digest " << report.input_digest << ")\n";
  os << "dimension n = " << n << ", kappa = " << report.geometry.kappa << ", seed = "
     << report.seed << "\n";
  os << "dynamical algebra: dim L = " << c.dim_L << " of " << n * n
     << (c.contains_identity_direction ? ", contains the identity direction" : "") << "\n";
  os << "operator controllable:   " << (c.operator_controllable ? "yes" : "no")
     << "   [dim L = n^2 test on the dynamical algebra]\n";
  os << "pure-state controllable: " << (c.pure_state_controllable ? "yes" : "no")
     << "   [dim L - dim(L n c_P) = 2n-2 centralizer test]\n";
  os << "killing criterion value: " << c.killing_criterion_value << " (target " << 2 * n - 2
     << ")   [vanishing-Killing-field quotient test]\n";
  os << "rank condition:          " << (c.rank_condition_holds ? "holds" : "fails")
     << "   [accessibility distribution spans every sampled tangent space]\n";
  os << "sampled ranks: min " << report.accessibility.min_rank << " over "
     << report.accessibility.ranks.size() << " points (target " << 2 * n - 2 << ")"
     << (report.accessibility.witness.has_value() ? ", deficient witness recorded" : "") << "\n";
  os << "killing algebra exhausted: " << (report.corollary_killing_algebra ? "yes" : "no")
     << "   [quotient dimension equals n^2-1]\n";
  for (const std::string& d : report.diagnostics) {
    os << "note: " << d << "\n";
  }
  return os.str();
}

json trajectory_to_json(const Trajectory& traj) {
  json j;
  j["times"] = traj.times;
  json states = json::array();
  for (const Cmat& s : traj.states) states.push_back(matrix_to_json(s));
  j["states"] = std::move(states);
  return j;
}

Trajectory trajectory_from_json(const json& j) {
  Trajectory traj;
  try {
    traj.times = j.at("times").get<std::vector<double>>();
    for (const json& sj : j.at("states")) {
      traj.states.push_back(matrix_from_json(sj, "state"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trajectory: ") + e.what());
  }
  if (traj.times.size() != traj.states.size()) {
    throw ParseError("trajectory: times/states length mismatch");
  }
  return traj;
}

}  // namespace qgc
