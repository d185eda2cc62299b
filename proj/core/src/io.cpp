#include "zk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "zk/errors.hpp"

namespace zk {

std::string version() { return ZK_VERSION; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& key, std::size_t line) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + key + "' expects a number, got '" + s + "'", line);
  return v;
}

int parse_int(const std::string& s, const std::string& key, std::size_t line) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + key + "' expects an integer, got '" + s + "'", line);
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  static const char* known[] = {"L",  "B",      "N",       "M",       "K",       "dt",      "T",     "u0.family",
                                "u0.A", "u0.j", "u0.file", "forcing", "cadence", "out_dir", "scheme"};
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError("unknown key '" + key + "'", lineno);
    }
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", lineno);
    if (auto it = entries.find(key); it != entries.end()) {
      throw ConfigError("duplicate key '" + key + "' (first set on line " + std::to_string(it->second.second) + ")",
                        lineno);
    }
    entries[key] = {value, lineno};
  }

  auto line_of = [&](const std::string& key) -> std::size_t {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.second;
  };
  auto num = [&](const std::string& key, double& dst) {
    if (auto it = entries.find(key); it != entries.end()) dst = parse_double(it->second.first, key, it->second.second);
  };
  auto integer = [&](const std::string& key, int& dst) {
    if (auto it = entries.find(key); it != entries.end()) dst = parse_int(it->second.first, key, it->second.second);
  };

  RunConfig c;
  num("L", c.domain.L);
  num("B", c.domain.B);
  integer("N", c.grid.N);
  integer("M", c.grid.M);
  c.grid.K = GridSpec::min_points(c.grid.N);
  integer("K", c.grid.K);
  num("dt", c.grid.dt);
  num("T", c.grid.T);
  if (entries.count("u0.family")) c.u0.family = entries["u0.family"].first;
  num("u0.A", c.u0.A);
  integer("u0.j", c.u0.j);
  if (entries.count("u0.file")) c.u0.file = entries["u0.file"].first;
  integer("cadence", c.cadence);
  if (entries.count("out_dir")) c.out_dir = entries["out_dir"].first;
  if (auto it = entries.find("forcing"); it != entries.end()) {
    if (it->second.first == "none") c.forcing = ForcingKind::none;
    else if (it->second.first == "manufactured") c.forcing = ForcingKind::manufactured;
    else throw ConfigError("forcing must be 'none' or 'manufactured'", it->second.second);
  }
  if (auto it = entries.find("scheme"); it != entries.end()) {
    if (it->second.first == "sbdf2") c.scheme = TimeScheme::sbdf2;
    else if (it->second.first == "cn-ab2") c.scheme = TimeScheme::cn_ab2;
    else throw ConfigError("scheme must be 'sbdf2' or 'cn-ab2'", it->second.second);
  }

  const auto& f = c.u0.family;
  if ((f == "canonical" || f == "sine") && !entries.count("u0.A")) {
    throw ConfigError("missing required key 'u0.A' for u0.family = " + f);
  }

  // Invariant gates, each reported at the line of the key that decides it.
  auto gate = [&](bool ok, const std::string& msg, std::initializer_list<const char*> keys) {
    if (ok) return;
    std::size_t line = 0;
    for (const char* k : keys) line = std::max(line, line_of(k));
    throw ConfigError(msg, line);
  };
  gate(c.domain.L > 0 && std::isfinite(c.domain.L), "L must be positive and finite", {"L"});
  gate(c.domain.B > 0 && std::isfinite(c.domain.B), "B must be positive and finite", {"B"});
  gate(c.grid.N >= 1, "N must be >= 1", {"N"});
  gate(c.grid.M >= 8, "M must be >= 8", {"M"});
  gate(c.grid.K >= GridSpec::min_points(c.grid.N),
       "K must be >= 2N+1 (got K=" + std::to_string(c.grid.K) + ", N=" + std::to_string(c.grid.N) + ")", {"K", "N"});
  gate(c.grid.dt > 0 && std::isfinite(c.grid.dt), "dt must be positive and finite", {"dt"});
  gate(c.grid.T >= 0 && std::isfinite(c.grid.T), "T must be non-negative and finite", {"T"});
  gate(c.cadence >= 1, "cadence must be >= 1", {"cadence"});
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), std::max({line_of("u0.family"), line_of("u0.j"), line_of("u0.A"), line_of("u0.file"),
                                          line_of("forcing")}));
  }
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_config(in);
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "L = " << fmt(c.domain.L) << "\n"
      << "B = " << fmt(c.domain.B) << "\n"
      << "N = " << c.grid.N << "\n"
      << "M = " << c.grid.M << "\n"
      << "K = " << c.grid.K << "\n"
      << "dt = " << fmt(c.grid.dt) << "\n"
      << "T = " << fmt(c.grid.T) << "\n"
      << "u0.family = " << c.u0.family << "\n"
      << "u0.A = " << fmt(c.u0.A) << "\n"
      << "u0.j = " << c.u0.j << "\n";
  if (!c.u0.file.empty()) out << "u0.file = " << c.u0.file.string() << "\n";
  out << "forcing = " << to_string(c.forcing) << "\n"
      << "scheme = " << to_string(c.scheme) << "\n"
      << "cadence = " << c.cadence << "\n"
      << "out_dir = " << c.out_dir.string() << "\n";
}

void write_records_csv(std::ostream& out, const std::vector<EnergyRecord>& records) {
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) out << (i ? "," : "") << kRecordColumns[i];
  out << "\n";
  for (const auto& r : records) {
    const auto v = record_values(r);
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << fmt(v[i]);
    out << "\n";
  }
}

void write_records_csv(const std::filesystem::path& path, const std::vector<EnergyRecord>& records) {
  auto out = open_out(path);
  write_records_csv(out, records);
}

std::vector<EnergyRecord> read_records_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  std::string expected;
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) expected += (i ? "," : "") + std::string(kRecordColumns[i]);
  if (trim(line) != expected) throw std::runtime_error(path.string() + ": unexpected CSV header");
  std::vector<EnergyRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::array<double, 16> v{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ss, cell, ',')) {
      if (i >= v.size()) throw std::runtime_error(path.string() + ": too many columns on line " + std::to_string(lineno));
      v[i] = parse_double(trim(cell), std::string(kRecordColumns[i]), lineno);
      ++i;
    }
    if (i != v.size()) throw std::runtime_error(path.string() + ": too few columns on line " + std::to_string(lineno));
    out.push_back(record_from_values(v));
  }
  return out;
}

void write_snapshot(const std::filesystem::path& path, const ModalState& state, const DomainSpec& domain) {
  auto out = open_out(path);
  out << "# zk-snapshot v1\n"
      << fmt(state.t) << " " << fmt(domain.L) << " " << fmt(domain.B) << " " << state.g.rows() << " "
      << state.g.cols() - 1 << "\n";
  for (Eigen::Index j = 0; j < state.g.rows(); ++j) {
    for (Eigen::Index i = 0; i < state.g.cols(); ++i) out << (i ? " " : "") << fmt(state.g(j, i));
    out << "\n";
  }
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string header;
  std::getline(in, header);
  if (trim(header) != "# zk-snapshot v1") throw std::runtime_error(path.string() + ": not a zk snapshot");
  Snapshot s;
  if (!(in >> s.t >> s.domain.L >> s.domain.B >> s.N >> s.M) || s.N < 1 || s.M < 1) {
    throw std::runtime_error(path.string() + ": bad snapshot header");
  }
  s.g.resize(s.N, s.M + 1);
  for (int j = 0; j < s.N; ++j) {
    for (int i = 0; i <= s.M; ++i) {
      if (!(in >> s.g(j, i))) throw std::runtime_error(path.string() + ": truncated snapshot");
    }
  }
  return s;
}

void write_threshold(const std::filesystem::path& path, const ThresholdReport& r) {
  auto out = open_out(path);
  out << "chi = " << fmt(r.chi) << "\n"
      << "m = " << fmt(r.m) << "\n"
      << "u0_norm = " << fmt(r.u0_norm) << "\n"
      << "delta_u0x = " << fmt(r.delta_u0x) << "\n"
      << "cubic_u0 = " << fmt(r.cubic_u0) << "\n"
      << "ut0_surrogate = " << fmt(r.ut0_surrogate) << "\n"
      << "C0 = " << fmt(r.C0) << "\n"
      << "C0_bound = " << fmt(r.C0_bound) << "\n"
      << "Cs = " << fmt(r.Cs) << "\n"
      << "admissible = " << (r.admissible ? "true" : "false") << "\n";
}

ThresholdReport read_threshold(const std::filesystem::path& path) {
  auto in = open_in(path);
  ThresholdReport r;
  std::map<std::string, double*> fields = {
      {"chi", &r.chi},       {"m", &r.m},     {"u0_norm", &r.u0_norm},     {"delta_u0x", &r.delta_u0x},
      {"cubic_u0", &r.cubic_u0}, {"ut0_surrogate", &r.ut0_surrogate}, {"C0", &r.C0}, {"C0_bound", &r.C0_bound},
      {"Cs", &r.Cs}};
  std::string raw;
  std::size_t lineno = 0;
  bool seen_flag = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "admissible") {
      if (value != "true" && value != "false") throw ConfigError("admissible must be true or false", lineno);
      r.admissible = value == "true";
      seen_flag = true;
    } else if (auto it = fields.find(key); it != fields.end()) {
      *it->second = value == "inf" ? INFINITY : parse_double(value, key, lineno);
    } else {
      throw ConfigError("unknown key '" + key + "'", lineno);
    }
  }
  if (!seen_flag) throw ConfigError(path.string() + ": missing 'admissible'");
  return r;
}

void write_manifest(const std::filesystem::path& path, const RunConfig& config) {
  auto out = open_out(path);
  out << "# zkg run manifest\n# version = " << version() << "\n";
  write_config(out, config);
}

TabulatedField read_tabulated_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  TabulatedField f;
  if (!(in >> f.nx >> f.ny) || f.nx < 1 || f.ny < 1) throw std::runtime_error(path.string() + ": bad table header");
  const std::size_t count = static_cast<std::size_t>(f.nx + 1) * static_cast<std::size_t>(f.ny + 1);
  f.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> f.values[i])) throw std::runtime_error(path.string() + ": expected " + std::to_string(count) + " values");
  }
  double extra;
  if (in >> extra) throw std::runtime_error(path.string() + ": trailing values after the table");
  return f;
}

}  // namespace zk
