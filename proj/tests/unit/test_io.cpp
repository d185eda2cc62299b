#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "zk/errors.hpp"
#include "zk/io.hpp"

using namespace zk;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("zk_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return 0;
}

}  // namespace

TEST(ParseConfig, MinimalFileFillsDefaults) {
  const auto c = parse("u0.A = 0.01\n");
  EXPECT_EQ(c.domain.L, 1.0);
  EXPECT_EQ(c.domain.B, 1.0);
  EXPECT_EQ(c.grid.N, 16);
  EXPECT_EQ(c.grid.M, 256);
  EXPECT_EQ(c.grid.K, 33);
  EXPECT_EQ(c.grid.dt, 1e-3);
  EXPECT_EQ(c.grid.T, 5.0);
  EXPECT_EQ(c.u0.family, "canonical");
  EXPECT_EQ(c.u0.A, 0.01);
  EXPECT_EQ(c.u0.j, 1);
  EXPECT_EQ(c.forcing, ForcingKind::none);
  EXPECT_EQ(c.scheme, TimeScheme::sbdf2);
  EXPECT_EQ(c.cadence, 1);
}

TEST(ParseConfig, KFollowsN) {
  EXPECT_EQ(parse("u0.A = 1\nN = 8\n").grid.K, 17);
}

TEST(ParseConfig, CommentsAndBlankLines) {
  const auto c = parse("# header\n\n  L = 2   # length\nu0.A=0.5\n");
  EXPECT_EQ(c.domain.L, 2.0);
  EXPECT_EQ(c.u0.A, 0.5);
}

TEST(ParseConfig, KBelowFloorIsRejected) {
  EXPECT_EQ(error_line("u0.A = 1\nK = 8\nN = 16\n"), 3u);
  EXPECT_EQ(error_line("u0.A = 1\nN = 16\nK = 32\n"), 3u);
}

TEST(ParseConfig, DuplicateKeyNamed) {
  try {
    parse("u0.A = 1\nN = 4\nN = 5\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("'N'"), std::string::npos);
  }
}

TEST(ParseConfig, UnknownAndMalformed) {
  EXPECT_EQ(error_line("u0.A = 1\nfoo = 3\n"), 2u);
  EXPECT_EQ(error_line("u0.A = 1\nM 256\n"), 2u);
  EXPECT_EQ(error_line("u0.A = 1\nM = 25x6\n"), 2u);
  EXPECT_EQ(error_line("u0.A = 1\ndt = -1\n"), 2u);
  EXPECT_EQ(error_line("u0.A = 1\nM = 4\n"), 2u);
  EXPECT_EQ(error_line("u0.A = 1\ncadence = 0\n"), 2u);
  EXPECT_EQ(error_line("u0.A = 1\nforcing = yes\n"), 2u);
  EXPECT_EQ(error_line("u0.A = 1\nu0.j = 40\n"), 2u);
}

TEST(ParseConfig, MissingAmplitude) {
  EXPECT_THROW(parse("N = 4\n"), ConfigError);
  EXPECT_NO_THROW(parse("u0.family = zero\n"));
}

TEST(ParseConfig, RoundTrip) {
  RunConfig c;
  c.domain = {1.25, 0.7};
  c.grid = {8, 96, 19, 2.5e-4, 0.3};
  c.u0 = {"canonical", 0.0123456789012345, 3, {}};
  c.forcing = ForcingKind::manufactured;
  c.scheme = TimeScheme::cn_ab2;
  c.cadence = 7;
  c.out_dir = "runs/a b";
  std::ostringstream out;
  write_config(out, c);
  EXPECT_EQ(parse(out.str()), c);
}

TEST(RecordsCsv, HeaderAndRoundTrip) {
  std::vector<EnergyRecord> recs(3);
  for (int i = 0; i < 3; ++i) {
    auto v = record_values(recs[i]);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = 0.1 * i + 1e-17 * k + (k == 15 ? -3.3e-200 : 0.0);
    recs[i] = record_from_values(v);
  }
  std::ostringstream out;
  write_records_csv(out, recs);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "t,l2,wl2,ux2,uy2,l4_4,uyy2,graduy2,delta_ux2,ut2,wut2,trace0,sup2_bound,sup2_meas,r_l2,r_w");
  const auto path = temp_path("records.csv");
  write_records_csv(path, recs);
  EXPECT_EQ(read_records_csv(path), recs);
}

TEST(Snapshot, RoundTrip) {
  ModalState s;
  s.t = 0.123;
  s.g = Eigen::MatrixXd::Random(3, 9);
  const auto path = temp_path("snap.txt");
  write_snapshot(path, s, DomainSpec{1.5, 0.5});
  const auto back = read_snapshot(path);
  EXPECT_EQ(back.t, 0.123);
  EXPECT_EQ(back.domain, (DomainSpec{1.5, 0.5}));
  EXPECT_EQ(back.N, 3);
  EXPECT_EQ(back.M, 8);
  EXPECT_EQ(back.g, s.g);
}

TEST(Threshold, RoundTripIncludingInfinity) {
  ThresholdReport r;
  r.chi = 14.8;
  r.m = std::numeric_limits<double>::infinity();
  r.Cs = 1.0 / 3.0;
  r.admissible = true;
  const auto path = temp_path("thr.txt");
  write_threshold(path, r);
  EXPECT_EQ(read_threshold(path), r);
}

TEST(Manifest, ParsesBackToConfig) {
  RunConfig c;
  c.u0.A = 0.25;
  const auto path = temp_path("manifest");
  write_manifest(path, c);
  EXPECT_EQ(parse_config(path), c);
  std::ifstream in(path);
  std::string first, second;
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_NE(second.find(version()), std::string::npos);
}

TEST(TabulatedField, ReadsTable) {
  const auto path = temp_path("table.txt");
  {
    std::ofstream out(path);
    out << "3 3\n";
    for (int i = 0; i < 16; ++i) out << i * 0.5 << (i % 4 == 3 ? "\n" : " ");
  }
  const auto f = read_tabulated_field(path);
  EXPECT_EQ(f.nx, 3);
  EXPECT_EQ(f.ny, 3);
  ASSERT_EQ(f.values.size(), 16u);
  EXPECT_EQ(f.values[5], 2.5);
}

TEST(TabulatedField, RejectsShortTable) {
  const auto path = temp_path("short.txt");
  {
    std::ofstream out(path);
    out << "3 3\n1 2 3\n";
  }
  EXPECT_THROW(read_tabulated_field(path), std::runtime_error);
}
