#ifndef QGC_IO_HPP
#define QGC_IO_HPP

#include "qgc/accessibility.hpp"
#include "qgc/control_sim.hpp"
#include "qgc/lie_engine.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qgc {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

/// Structurally broken input: unreadable file, invalid JSON, schema or shape
/// violations. Maps to CLI exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed input carrying invalid semantics: non-Hermitian matrices,
/// invalid density matrices or states. Maps to CLI exit code 3.
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

/// FNV-1a digest of the raw input bytes, as a fixed-width hex string.
std::string digest_hex(const std::string& bytes);

/// Matrix entries are [re, im] pairs.
json matrix_to_json(const Cmat& m);
Cmat matrix_from_json(const json& j, const std::string& name, int expected_dim = -1);

/// SystemFile: {"dim": n, "drift": <matrix>, "controls": [<matrix>, ...]}.
/// Shape errors throw ParseError naming the offending matrix; Hermiticity
/// violations throw SemanticError naming the worst entry.
ControlSystem system_from_json(const json& j, const Tolerances& tol = {});
ControlSystem load_system(const std::string& path, const Tolerances& tol = {});
json system_to_json(const ControlSystem& sys);

/// ScheduleFile: {"segments": [{"duration": d, "values": [u1, ...]}, ...]}.
ControlSchedule schedule_from_json(const json& j, int num_controls);
ControlSchedule load_schedule(const std::string& path, int num_controls);
json schedule_to_json(const ControlSchedule& sched);

/// MatrixFile: {"dim": n, "matrix": <matrix>} for observables, densities and
/// probe states.
Cmat load_matrix_file(const std::string& path, const std::string& role);

/// Hermiticity gate with entry-level diagnostics (SemanticError names the
/// worst offending entry, e.g. "drift[2][1]").
void require_hermitian_input(const Cmat& m, const std::string& name, double herm_tol);

MixedState mixed_state_from_matrix(const Cmat& m, const std::string& name);
PureState pure_state_from_matrix(const Cmat& m, const std::string& name);

/// Aggregated machine-readable analysis report.
struct ReportFile {
  std::string tool_version = kToolVersion;
  std::string input_digest;
  GeometryContext geometry;
  ControllabilityReport controllability;
  RankConditionResult accessibility;
  int accessibility_samples = 0;
  bool corollary_killing_algebra = false;
  std::uint64_t seed = 0;
  std::vector<std::string> diagnostics;
};

json report_to_json(const ReportFile& report);
ReportFile report_from_json(const json& j);
std::string report_to_text(const ReportFile& report);

json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const json& j);

}  // namespace qgc

#endif
