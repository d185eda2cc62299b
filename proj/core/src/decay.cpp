#include "zk/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "zk/errors.hpp"

namespace zk {

RateFit fit_rate(std::span<const double> t, std::span<const double> value, double t0, double t1) {
  if (t.size() != value.size()) throw std::invalid_argument("fit_rate: series lengths differ");
  if (!(t1 > t0)) throw std::invalid_argument("fit_rate: window must satisfy t1 > t0");
  double st = 0, sv = 0, stt = 0, stv = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1) continue;
    if (!(value[i] > 0.0)) throw InsufficientDataError("fit_rate: non-positive value in the fit window");
    const double lv = std::log(value[i]);
    st += t[i];
    sv += lv;
    stt += t[i] * t[i];
    stv += t[i] * lv;
    ++n;
  }
  if (n < 10) throw InsufficientDataError("fit_rate: need at least 10 samples in the window");
  const double mt = st / n, mv = sv / n;
  const double slope = (stv - n * mt * mv) / (stt - n * mt * mt);
  return {-slope, mv - slope * mt, n};
}

EnvelopeCheck check_envelope(std::span<const double> t, std::span<const double> value, double rate, double tol,
                             double t_anchor) {
  if (t.size() != value.size()) throw std::invalid_argument("check_envelope: series lengths differ");
  EnvelopeCheck out;
  std::size_t a = 0;
  while (a < t.size() && t[a] < t_anchor) ++a;
  if (a == t.size()) return out;
  const double v0 = value[a];
  for (std::size_t i = a; i < t.size(); ++i) {
    const double env = v0 * std::exp(-rate * (t[i] - t[a]));
    const double bound = env * (1.0 + tol);
    if (value[i] != 0.0 && env > 0.0) out.worst_ratio = std::max(out.worst_ratio, value[i] / env);
    if (!(value[i] <= bound)) {
      out.satisfied = false;
      if (!out.first_violation) out.first_violation = t[i];
    }
  }
  return out;
}

namespace {

DecayFit analyse(const std::string& name, const std::vector<double>& t, const std::vector<double>& v, double rate,
                 double tol, double anchor, double window_start) {
  DecayFit f;
  f.quantity = name;
  f.envelope_rate = rate;
  f.anchor = anchor;
  f.envelope = check_envelope(t, v, rate, tol, anchor);
  f.t0 = window_start;
  f.t1 = window_start;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= window_start && v[i] > kFitFloor) f.t1 = t[i];
  }
  if (f.t1 > f.t0) {
    try {
      f.rate = fit_rate(t, v, f.t0, f.t1).rate;
    } catch (const InsufficientDataError&) {
    }
  }
  return f;
}

}  // namespace

RunReport decay_report(const std::vector<EnergyRecord>& records, const ThresholdReport& threshold, double tol) {
  RunReport rep;
  rep.admissible = threshold.admissible;
  rep.chi = threshold.chi;
  rep.tol = tol;
  rep.wl2_rate_floor = 0.95 * threshold.chi;
  if (records.empty()) throw InsufficientDataError("decay_report: no records");

  std::vector<double> t, wl2, wut2, gy, dux;
  for (const auto& r : records) {
    t.push_back(r.t);
    wl2.push_back(r.wl2);
    wut2.push_back(r.wut2);
    gy.push_back(r.graduy2);
    dux.push_back(r.delta_ux2);
    rep.max_abs_r_l2 = std::max(rep.max_abs_r_l2, std::abs(r.r_l2));
    rep.max_abs_r_w = std::max(rep.max_abs_r_w, std::abs(r.r_w));
  }
  const double late = t.front() + 0.1 * (t.back() - t.front());
  auto anchor_at = [&](double when) {
    return *std::lower_bound(t.begin(), t.end(), when - 1e-12);
  };
  const double chi = threshold.chi;
  rep.fits.push_back(analyse("wl2", t, wl2, chi, tol, t.front(), late));
  rep.fits.push_back(analyse("wut2", t, wut2, chi, tol, anchor_at(late), late));
  rep.fits.push_back(analyse("graduy2", t, gy, chi, tol, anchor_at(late), late));
  rep.fits.push_back(analyse("delta_ux2", t, dux, chi, tol, anchor_at(late), late));

  if (!rep.admissible) return rep;
  rep.checks = 5;
  for (const auto& f : rep.fits) rep.passed += f.envelope.satisfied ? 1 : 0;
  const auto& w = rep.fits.front();
  // An identically zero series decays at any rate.
  const bool zero = std::all_of(wl2.begin(), wl2.end(), [](double v) { return v == 0.0; });
  if (zero || (w.rate && *w.rate >= rep.wl2_rate_floor)) ++rep.passed;
  return rep;
}

std::string RunReport::text() const {
  std::ostringstream os;
  char buf[256];
  os << "decay report\n";
  std::snprintf(buf, sizeof buf, "chi = %.10g\nadmissible = %s\ntol = %.4g\n", chi, admissible ? "true" : "false", tol);
  os << buf;
  if (!admissible) os << "verdict = no-guarantee (threshold not met; observations only)\n";
  for (const auto& f : fits) {
    std::snprintf(buf, sizeof buf, "%-10s window=[%.6g, %.6g] rate=%s envelope_rate=%.6g anchor=%.6g ", f.quantity.c_str(),
                  f.t0, f.t1, f.rate ? std::to_string(*f.rate).c_str() : "n/a", f.envelope_rate, f.anchor);
    os << buf;
    if (admissible) {
      os << "envelope=" << (f.envelope.satisfied ? "ok" : "violated");
    } else {
      os << "envelope_observed=" << (f.envelope.satisfied ? "below" : "above");
    }
    if (f.envelope.first_violation) {
      std::snprintf(buf, sizeof buf, " first_violation=%.6g", *f.envelope.first_violation);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, " worst_ratio=%.6g\n", f.envelope.worst_ratio);
    os << buf;
  }
  if (!fits.empty()) {
    std::snprintf(buf, sizeof buf, "wl2 fitted rate floor (0.95 chi) = %.6g\n", wl2_rate_floor);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "max|r_l2| = %.6g\nmax|r_w| = %.6g\n", max_abs_r_l2, max_abs_r_w);
  os << buf;
  os << "PASS=" << passed << "/" << checks << "\n";
  return os.str();
}

}  // namespace zk
