// zkg: command-line front end for the ZK Galerkin simulator.
//
// Exit codes: 0 success, 1 unexpected error, 2 configuration error,
// 3 solver blow-up, 4 a requested check failed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "zk/convergence.hpp"
#include "zk/decay.hpp"
#include "zk/errors.hpp"
#include "zk/inequality.hpp"
#include "zk/io.hpp"
#include "zk/solver.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kBlowUp = 3;
constexpr int kCheckFailed = 4;

int cmd_run(const fs::path& config_path, int snapshot_every) {
  const zk::RunConfig cfg = zk::parse_config(config_path);
  fs::create_directories(cfg.out_dir);
  zk::write_manifest(cfg.out_dir / "manifest", cfg);

  zk::RunOptions opts;
  if (snapshot_every > 0) {
    fs::create_directories(cfg.out_dir / "snapshots");
    opts.snapshot_every = snapshot_every;
    opts.on_snapshot = [&](const zk::ModalState& s) {
      char name[64];
      std::snprintf(name, sizeof name, "snap_%08lld.txt", static_cast<long long>(s.step));
      zk::write_snapshot(cfg.out_dir / "snapshots" / name, s, cfg.domain);
    };
  }
  const zk::RunResult r = zk::run(cfg, opts);
  zk::write_records_csv(cfg.out_dir / "records.csv", r.records);

  std::printf("records=%zu t=%.6g budget_residual=%.6e trace_integral=%.6e\n", r.records.size(), r.final_state.t,
              r.budget_residual, r.trace_integral);
  if (r.blow_up) {
    std::fprintf(stderr, "blow-up: %s\n", r.blow_up->what());
    return kBlowUp;
  }
  return kOk;
}

int cmd_verify(int samples, std::uint64_t seed, int band, double L, double B, const fs::path& report) {
  constexpr double kFloor = -1e-10;
  const zk::TestFunctionFamily family(L, B, band, seed);
  std::ofstream out;
  if (!report.empty()) {
    out.open(report);
    if (!out) throw std::runtime_error("cannot write " + report.string());
    out << "sample,l4_margin,l8_margin,steklov_margin,sup_margin\n";
  }
  int violations = 0;
  double worst = INFINITY;
  for (int i = 0; i < samples; ++i) {
    const auto u = family.sample(i);
    const double m4 = zk::check_ladyzhenskaya(u, zk::LebesgueExponent::L4);
    const double m8 = zk::check_ladyzhenskaya(u, zk::LebesgueExponent::L8);
    const double ms = zk::check_steklov(family.sample_1d(i));
    const double mb = zk::check_sup_bound(u);
    for (double m : {m4, m8, ms, mb}) {
      if (!(m >= kFloor)) ++violations;
      worst = std::min(worst, m);
    }
    if (out) {
      char line[160];
      std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g\n", i, m4, m8, ms, mb);
      out << line;
    }
  }
  const double equality = zk::check_steklov({L, {1.0}});
  const bool sharp = std::abs(equality) <= 1e-10;
  std::printf("steklov_equality_margin=%.3e\n", equality);
  std::printf("trace_probe_ratio_q4=%.6g trace_probe_ratio_q8=%.6g\n", zk::trace_probe_ratio(L, B, 4),
              zk::trace_probe_ratio(L, B, 8));
  std::printf("worst_margin=%.6e\n", worst);
  std::printf("violations=%d\n", violations + (sharp ? 0 : 1));
  return violations == 0 && sharp ? kOk : kCheckFailed;
}

int cmd_decay(const fs::path& records, const fs::path& threshold, double tol, const fs::path& out_path) {
  const auto recs = zk::read_records_csv(records);
  const auto thr = zk::read_threshold(threshold);
  const auto rep = zk::decay_report(recs, thr, tol);
  const std::string text = rep.text();
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path.string());
    out << text;
  }
  return rep.all_passed() ? kOk : kCheckFailed;
}

int cmd_convergence(const fs::path& config_path, int levels) {
  const zk::RunConfig cfg = zk::parse_config(config_path);
  const auto table = zk::convergence_study(cfg, levels);
  std::printf("%6s %12s %14s %14s %14s %14s\n", "M", "dt", "max_error", "max|r_l2|", "max|r_w|", "R(T)");
  for (const auto& lv : table.levels) {
    std::printf("%6d %12.4e %14.6e %14.6e %14.6e %14.6e\n", lv.M, lv.dt, lv.max_error, lv.max_abs_r_l2,
                lv.max_abs_r_w, lv.budget_residual);
  }
  bool ok = true;
  for (std::size_t k = 0; k < table.error_orders.size(); ++k) {
    const double p = table.error_orders[k];
    std::printf("order[%zu->%zu] error=%.4f r_l2=%.4f r_w=%.4f R=%.4f\n", k, k + 1, p, table.r_l2_orders[k],
                table.r_w_orders[k], table.budget_orders[k]);
    // A zero manufactured solution has zero error at every level.
    if (std::isnan(p) && table.levels[k].max_error == 0.0 && table.levels[k + 1].max_error == 0.0) continue;
    if (!(std::abs(p - 2.0) <= 0.3)) ok = false;
  }
  std::printf("%s\n", ok ? "orders=ok" : "orders=out-of-range");
  return ok ? kOk : kCheckFailed;
}

int cmd_threshold(const fs::path& config_path, const fs::path& out_path) {
  const zk::RunConfig cfg = zk::parse_config(config_path);
  const auto r = zk::compute_threshold_m(cfg.initial_data(), cfg.domain, cfg.grid);
  if (!out_path.empty()) zk::write_threshold(out_path, r);
  std::printf("chi=%.10g m=%.10g u0_norm=%.10g ut0_surrogate=%.10g C0=%.10g Cs=%.10g admissible=%s\n", r.chi, r.m,
              r.u0_norm, r.ut0_surrogate, r.C0, r.Cs, r.admissible ? "true" : "false");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin simulator and verification harness for the 2D ZK equation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", zk::version());

  auto* run = app.add_subcommand("run", "evolve a configuration and write records.csv");
  fs::path run_config;
  int snapshot_every = 0;
  run->add_option("--config", run_config, "configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--snapshot-every", snapshot_every, "steps between snapshot files (0 = none)")
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify-inequalities", "property-test the functional inequalities");
  int samples = 200, band = 6;
  std::uint64_t seed = 1;
  double L = 1.0, B = 1.0;
  fs::path report;
  verify->add_option("--samples", samples, "number of random samples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "generator seed");
  verify->add_option("--band", band, "modes per axis")->check(CLI::PositiveNumber);
  verify->add_option("--report", report, "CSV of margins");
  verify->add_option("--L", L, "rectangle length")->check(CLI::PositiveNumber);
  verify->add_option("--B", B, "rectangle width")->check(CLI::PositiveNumber);

  auto* decay = app.add_subcommand("decay-report", "check decay envelopes of a record stream");
  fs::path records, threshold, decay_out;
  double tol = 0.05;
  decay->add_option("--records", records, "records.csv from a run")->required()->check(CLI::ExistingFile);
  decay->add_option("--threshold", threshold, "threshold file")->required()->check(CLI::ExistingFile);
  decay->add_option("--tol", tol, "relative envelope tolerance")->check(CLI::NonNegativeNumber);
  decay->add_option("--out", decay_out, "report file");

  auto* conv = app.add_subcommand("convergence", "manufactured-solution refinement study");
  fs::path conv_config;
  int levels = 3;
  conv->add_option("--config", conv_config, "configuration with forcing = manufactured")
      ->required()
      ->check(CLI::ExistingFile);
  conv->add_option("--levels", levels, "number of refinement levels (>= 3)")->check(CLI::Range(3, 8));

  auto* thr = app.add_subcommand("threshold", "evaluate the smallness threshold of a configuration's datum");
  fs::path thr_config, thr_out;
  thr->add_option("--config", thr_config, "configuration file")->required()->check(CLI::ExistingFile);
  thr->add_option("--out", thr_out, "threshold file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(run_config, snapshot_every);
    if (*verify) return cmd_verify(samples, seed, band, L, B, report);
    if (*decay) return cmd_decay(records, threshold, tol, decay_out);
    if (*conv) return cmd_convergence(conv_config, levels);
    if (*thr) return cmd_threshold(thr_config, thr_out);
  } catch (const zk::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const zk::BlowUpError& e) {
    std::fprintf(stderr, "blow-up: %s\n", e.what());
    return kBlowUp;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
