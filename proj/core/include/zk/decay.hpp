#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zk/functionals.hpp"
#include "zk/inequality.hpp"

namespace zk {

struct RateFit {
  double rate = 0;       ///< negated least-squares slope of log(value) against t
  double intercept = 0;  ///< fitted log(value) at t = 0
  std::size_t samples = 0;
};

/// Fits log(value) = intercept - rate t over samples with t0 <= t <= t1.
/// Throws InsufficientDataError on fewer than 10 samples or a non-positive value.
RateFit fit_rate(std::span<const double> t, std::span<const double> value, double t0, double t1);

struct EnvelopeCheck {
  bool satisfied = true;
  std::optional<double> first_violation;  ///< time of the first sample above the envelope
  double worst_ratio = 0;                 ///< max value / envelope (0 for the zero series)
};

/// value(t) <= value(t_anchor) exp(-rate (t - t_anchor)) (1 + tol) for every sample with t >= t_anchor.
EnvelopeCheck check_envelope(std::span<const double> t, std::span<const double> value, double rate, double tol,
                             double t_anchor = 0.0);

struct DecayFit {
  std::string quantity;
  double t0 = 0, t1 = 0;          ///< fit window
  std::optional<double> rate;     ///< empty when the window holds too few positive samples
  double envelope_rate = 0;
  double anchor = 0;              ///< envelope anchor time
  EnvelopeCheck envelope;
};

struct RunReport {
  bool admissible = false;
  double chi = 0;
  double tol = 0;
  std::vector<DecayFit> fits;
  double max_abs_r_l2 = 0;
  double max_abs_r_w = 0;
  double wl2_rate_floor = 0;  ///< 0.95 chi
  int passed = 0;
  int checks = 0;  ///< 0 when no guarantee applies

  bool all_passed() const { return passed == checks; }
  /// Human-readable report ending in the footer line PASS=<k>/<n>.
  std::string text() const;
};

/// Values below this are treated as underflowed and excluded from rate fits.
inline constexpr double kFitFloor = 1e-280;

/// Envelope checks: wl2 anchored at t = 0 with rate chi and its fitted rate
/// against 0.95 chi; wut2, graduy2 and delta_ux2 at rate chi anchored at the
/// start of the late window [0.1 T, T]. Inadmissible data produce
/// observations only (checks = 0).
RunReport decay_report(const std::vector<EnergyRecord>& records, const ThresholdReport& threshold, double tol = 0.05);

}  // namespace zk
