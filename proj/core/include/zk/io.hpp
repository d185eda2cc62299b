#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zk/functionals.hpp"
#include "zk/inequality.hpp"
#include "zk/solver.hpp"
#include "zk/types.hpp"

namespace zk {

/// Library version written into run manifests.
std::string version();

/// Parses `key = value` lines ('#' starts a comment). Keys: L, B, N, M, K, dt,
/// T, u0.family, u0.A, u0.j, u0.file, forcing, cadence, out_dir, scheme.
/// Defaults: L = B = 1, N = 16, M = 256, K = 2N + 1, dt = 1e-3, T = 5,
/// u0.family = canonical, u0.j = 1, forcing = none, cadence = 1, out_dir = out,
/// scheme = sbdf2. u0.A is required for the canonical and sine families and
/// u0.file for tabulated data. Throws ConfigError carrying the line number.
/// Relative u0.file and out_dir paths are kept as written.
RunConfig parse_config(std::istream& in);
RunConfig parse_config(const std::filesystem::path& path);

/// Writes every key so that parse_config reproduces the config exactly.
void write_config(std::ostream& out, const RunConfig& config);

void write_records_csv(std::ostream& out, const std::vector<EnergyRecord>& records);
void write_records_csv(const std::filesystem::path& path, const std::vector<EnergyRecord>& records);
std::vector<EnergyRecord> read_records_csv(const std::filesystem::path& path);

/// Text snapshot:
///   # zk-snapshot v1
///   t L B N M
///   N lines of M+1 values (mode j on line j), %.17g
struct Snapshot {
  double t = 0;
  DomainSpec domain;
  int N = 0;
  int M = 0;
  Eigen::MatrixXd g;
};
void write_snapshot(const std::filesystem::path& path, const ModalState& state, const DomainSpec& domain);
Snapshot read_snapshot(const std::filesystem::path& path);

/// key = value text, one field of ThresholdReport per line.
void write_threshold(const std::filesystem::path& path, const ThresholdReport& report);
ThresholdReport read_threshold(const std::filesystem::path& path);

/// Resolved config preceded by `version = ...`.
void write_manifest(const std::filesystem::path& path, const RunConfig& config);

/// First line "nx ny", then (nx+1)(ny+1) values in x-major order
/// (value of (x_i, y_k) at position i * (ny + 1) + k), whitespace separated.
TabulatedField read_tabulated_field(const std::filesystem::path& path);

}  // namespace zk
