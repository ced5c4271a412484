// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hpmsim/hpmsim.hpp"

using namespace hpmsim;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [x]");
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(10);
    os << what << '=' << got << " (want " << want << " +- " << tol << ')';
    expect(std::fabs(got - want) <= tol, os.str());
  }
  void within(double got, double lo, double hi, const std::string& what) {
    std::ostringstream os;
    os.precision(10);
    os << what << '=' << got << " (want [" << lo << ", " << hi << "])";
    expect(got >= lo && got <= hi, os.str());
  }
};

constexpr double kLambda = 2.998e8 / 2.45e9;

Check antenna() {
  Check c;
  c.near(to_dbi(antenna_gain(0.60, kLambda, 0.55)), 21.2, 0.05, "gain(0.60)");
  c.near(to_dbi(antenna_gain(1.00, kLambda, 0.55)), 25.6, 0.05, "gain(1.00)");
  c.near(half_power_beamwidth(0.60, kLambda), 14.3, 0.05, "theta3dB(0.60)");
  return c;
}

Check efield_law() {
  Check c;
  const SystemConfig s;
  c.near(efield_at(s, 20.0, LineLoss::excluded), 495.0, 0.01 * 495.0, "E(20 m)");
  c.near(efield_at(s, 40.0, LineLoss::excluded), 247.0, 0.01 * 247.0, "E(40 m)");
  return c;
}

Check waveguide_check() {
  Check c;
  const waveguide::WaveguideSpec wr340;
  c.near(waveguide::cutoff_frequency(wr340, waveguide::ModeFamily::te, 1, 0), 1.736e9, 1e6, "fc TE10");
  c.near(waveguide::cutoff_frequency(wr340, waveguide::ModeFamily::te, 2, 0), 3.471e9, 1e6, "fc TE20");
  c.near(waveguide::te10_attenuation_db(wr340, 2.45e9), 0.009, 0.2 * 0.009, "alpha TE10 dB/m");
  return c;
}

Check safety() {
  Check c;
  const SystemConfig s;
  c.near(analysis::safety_distance(s, 50.0, LineLoss::excluded), 72.0, 1.0, "d(50 W/m2)");
  c.near(analysis::safety_distance(s, 10.0, LineLoss::excluded), 161.0, 1.0, "d(10 W/m2)");
  return c;
}

Check dwell() {
  Check c;
  const SystemConfig s;
  c.near(analysis::dwell_time(s, 20.0, LineLoss::excluded), 1.5, 0.05 * 1.5, "t(20 m)");
  c.near(analysis::dwell_time(s, 40.0, LineLoss::excluded), 6.2, 0.05 * 6.2, "t(40 m)");
  return c;
}

Check pulsed() {
  Check c;
  const auto rows = analysis::pulsed_cw_compare(5.0e3, {0.01}, SystemConfig{}, {40.0}, damage::DroneModel::baseline(),
                                                LineLoss::excluded);
  const double e = rows.front().peak_efield_vpm;
  c.within(e, 1100.0, INFINITY, "peak E(40 m)");
  return c;
}

Check monte_carlo() {
  Check c;
  const mc::CampaignSetup setup;  // single sigmoid, default distributions, line loss on
  const double ranges[] = {20.0, 25.0, 30.0, 35.0, 40.0};
  const double reference[] = {51.4, 36.8, 25.2, 16.5, 13.1};
  double prev = 101.0;
  for (int i = 0; i < 5; ++i) {
    const auto s = mc::run_campaign(setup, ranges[i], 10000, 42);
    const double pct = 100.0 * s.kill_prob;
    c.near(pct, reference[i], 2.5, "kill% @" + std::to_string(static_cast<int>(ranges[i])) + " m");
    c.expect(pct < prev, "strictly decreasing at " + std::to_string(static_cast<int>(ranges[i])) + " m");
    prev = pct;
    if (ranges[i] == 30.0) {
      c.within(s.efield_mean, 190.0, 220.0, "E mean @30 m");
      c.within(s.efield_std, 65.0, 95.0, "E std @30 m");
    }
  }
  return c;
}

Check clopper_pearson() {
  Check c;
  // Independent 50-digit oracle values, frozen before the build.
  const auto ci = stats::clopper_pearson(5144, 10000, 0.95);
  c.near(ci.low, 0.5045512492397207, 0.001, "low");
  c.near(ci.high, 0.5242403600502007, 0.001, "high");
  c.near(ci.low, 0.5046, 0.001, "low vs quoted");
  c.near(ci.high, 0.5242, 0.001, "high vs quoted");
  c.expect(stats::clopper_pearson(0, 10000).low == 0.0, "(0, n) low == 0");
  c.expect(stats::clopper_pearson(10000, 10000).high == 1.0, "(n, n) high == 1");
  return c;
}

Check determinism() {
  Check c;
  const mc::CampaignSetup setup;
  const auto serial = mc::run_campaign(setup, 25.0, 10000, 42, 1);
  const auto parallel = mc::run_campaign(setup, 25.0, 10000, 42, 0);
  c.expect(serial.n_kills == parallel.n_kills, "kill counts " + std::to_string(serial.n_kills) + " == " +
                                                   std::to_string(parallel.n_kills));
  c.expect(serial.efield_sum == parallel.efield_sum, "E sums identical");
  c.expect(serial.efield_sq_sum == parallel.efield_sq_sum, "E^2 sums identical");
  return c;
}

Check damage_properties() {
  Check c;
  const auto drone = damage::DroneModel::baseline();
  double worst = 0.0;
  for (const auto& s : drone.subsystems()) worst = std::max(worst, std::fabs(damage::subsystem_kill_prob(s.e50, s) - 0.5));
  c.within(worst, 0.0, 1e-12, "max |p(E50) - 0.5|");
  bool dominates = true;
  for (double e = 0.0; e <= 600.0; e += 0.5) {
    double mx = 0.0;
    for (const auto& s : drone.subsystems()) mx = std::max(mx, damage::subsystem_kill_prob(e, s));
    dominates = dominates && damage::system_kill_prob(e, drone) >= mx;
  }
  c.expect(dominates, "system >= max subsystem on 0-600 V/m");
  double resid = 0.0;
  for (double target : {0.1, 0.5, 0.9, 0.99}) {
    const SystemConfig s;
    const auto kr = damage::kill_range(s, drone, target, LineLoss::excluded);
    if (!kr.found()) {
      c.expect(false, "kill_range found");
      continue;
    }
    resid = std::max(resid, std::fabs(damage::system_kill_prob(efield_at(s, kr.range_m, LineLoss::excluded), drone) -
                                      target));
  }
  c.within(resid, 0.0, 1e-6, "kill_range round-trip residual");
  return c;
}

Check coupling_properties() {
  Check c;
  c.expect(coupling::resonance_factor(kLambda / 2.0, kLambda, 10.0, 0.02) == 10.0, "R(lambda/2) == Q exactly");
  // 0.0612 m is the half-wave rounded to 0.1 mm.
  c.near(coupling::resonance_factor(0.0612, 0.12237, 10.0, 0.02), 10.0, 1e-5, "R(0.0612 m)");
  coupling::CouplingParams p;
  p.wire_length_m = 0.0612;
  // Collinearity of (0, 0), (E1, V1), (E2, V2).
  const double e1 = 123.0;
  const double e2 = 457.0;
  const double v1 = coupling::coupled_voltage(e1, p, kLambda);
  const double v2 = coupling::coupled_voltage(e2, p, kLambda);
  c.within(std::fabs(v2 / e2 - v1 / e1) / (v1 / e1), 0.0, 1e-12, "relative slope mismatch");
  c.expect(coupling::coupled_voltage(0.0, p, kLambda) == 0.0, "V(0) == 0");
  return c;
}

Check tradespace() {
  Check c;
  const auto drone = damage::DroneModel::baseline();
  const std::vector<double> powers = {10.0e3, 20.0e3, 40.0e3};
  const std::vector<double> dishes = {0.4, 0.6, 0.8};
  std::vector<double> p4;
  std::vector<double> d2;
  for (double p : powers) p4.push_back(4.0 * p);
  for (double d : dishes) d2.push_back(2.0 * d);
  const SystemConfig base;
  const auto m = analysis::tradespace_map(powers, dishes, base, drone, 0.9, LineLoss::excluded);
  const auto mp = analysis::tradespace_map(p4, dishes, base, drone, 0.9, LineLoss::excluded);
  const auto md = analysis::tradespace_map(powers, d2, base, drone, 0.9, LineLoss::excluded);
  double worst_p = 0.0;
  double worst_d = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (!m.reachable(i, j) || !mp.reachable(i, j) || !md.reachable(i, j)) continue;
      ++cells;
      worst_p = std::max(worst_p, std::fabs(mp.at(i, j) / m.at(i, j) - 2.0));
      worst_d = std::max(worst_d, std::fabs(md.at(i, j) / m.at(i, j) - 2.0));
    }
  }
  c.expect(cells == 9, std::to_string(cells) + "/9 cells reachable");
  c.within(worst_p, 0.0, 0.01, "max |r(4P)/r(P) - 2|");
  c.within(worst_d, 0.0, 0.01, "max |r(2D)/r(D) - 2|");
  return c;
}

Check excluded_claims() {
  Check c;
  const auto dir = std::filesystem::temp_directory_path() / ("hpmsim_acceptance_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  io::RunOptions opt;
  opt.timestamp = false;
  opt.trials = 1000;
  const auto written = io::reproduce_all(io::parse_scenario(""), opt, io::Format::csv, dir);
  std::ifstream f(dir / "discrepancies.md");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string md = ss.str();
  c.expect(written.size() == io::subcommands().size() + 1, std::to_string(written.size()) + " files written");
  const char* claims[] = {"Deterministic kill column", "~18 m", "~88 m", "~12 m -> ~45 m", "~45 V", "7.5 kW"};
  for (const char* claim : claims) c.expect(md.find(claim) != std::string::npos, std::string("names '") + claim + "'");
  std::filesystem::remove_all(dir);
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"antenna gain and beamwidth", antenna},
      {"boresight E-field", efield_law},
      {"waveguide cutoffs and TE10 attenuation", waveguide_check},
      {"exposure safety distances", safety},
      {"dwell time to fluence threshold", dwell},
      {"pulsed peak field", pulsed},
      {"single-sigmoid Monte Carlo campaign", monte_carlo},
      {"Clopper-Pearson interval", clopper_pearson},
      {"thread-count determinism", determinism},
      {"damage model properties", damage_properties},
      {"coupling properties", coupling_properties},
      {"tradespace scaling", tradespace},
      {"excluded claims report", excluded_claims},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failures += c.ok ? 0 : 1;
    std::printf("%s %2d %s: %s\n", c.ok ? "PASS" : "FAIL", n, name, c.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
