#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hpmsim/core_physics.hpp"
#include "hpmsim/damage.hpp"

namespace hpmsim::analysis {

//------------------------------------------------------------------------//
// Kill curves

struct KillCurvePoint {
  double range_m = 0.0;
  double efield_vpm = 0.0;
  double p_system = 0.0;
  double p_single = 0.0;
  bool near_field = false;
};

/*!
 * Deterministic kill probability versus range at the peak power of
 * config: the serial drone model and a single reference sigmoid, side by
 * side.
 */
inline std::vector<KillCurvePoint> kill_curve(const SystemConfig& config, const damage::DroneModel& drone,
                                              const std::vector<double>& ranges, LineLoss line_loss,
                                              const damage::SubsystemModel& single) {
  const SystemConfig peak = config.at_peak();
  std::vector<KillCurvePoint> out;
  out.reserve(ranges.size());
  for (double r : ranges) {
    const auto prop = propagate(peak, r, line_loss);
    out.push_back({r, prop.efield_vpm, damage::system_kill_prob(prop.efield_vpm, drone),
                   damage::subsystem_kill_prob(prop.efield_vpm, single), prop.near_field});
  }
  return out;
}

//------------------------------------------------------------------------//
// Pulsed vs CW at fixed average power

struct PulsedRow {
  double duty_cycle = 1.0;
  double range_m = 0.0;
  double peak_power_w = 0.0;
  double peak_efield_vpm = 0.0;
  double p_system = 0.0;
};

inline std::vector<PulsedRow> pulsed_cw_compare(double average_power_w, const std::vector<double>& duty_cycles,
                                                const SystemConfig& config, const std::vector<double>& ranges,
                                                const damage::DroneModel& drone, LineLoss line_loss) {
  std::vector<PulsedRow> rows;
  rows.reserve(duty_cycles.size() * ranges.size());
  for (double d : duty_cycles) {
    SystemConfig c = config;
    c.transmit_power_w = average_power_w;
    c.duty_cycle = d;
    const double peak = pulsed_peak_power(average_power_w, d);
    const SystemConfig pc = c.at_peak();
    for (double r : ranges) {
      const double e = efield_at(pc, r, line_loss);
      rows.push_back({d, r, peak, e, damage::system_kill_prob(e, drone)});
    }
  }
  return rows;
}

//------------------------------------------------------------------------//
// Power-aperture trade space

struct TradespaceMap {
  static constexpr double kBeyondEnvelope = -1.0;

  std::vector<double> power_axis;
  std::vector<double> diameter_axis;
  //! Row-major [power][diameter]; kBeyondEnvelope where the target is unreachable.
  std::vector<double> r_target;
  double target_prob = 0.9;

  double at(std::size_t ip, std::size_t id) const { return r_target[ip * diameter_axis.size() + id]; }
  bool reachable(std::size_t ip, std::size_t id) const { return at(ip, id) != kBeyondEnvelope; }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

/*!
 * Kill range for target_prob on every (peak power, diameter) cell. Powers
 * are treated as peak (duty = 1). Cells are independent and may run in
 * parallel; layout follows axis order.
 */
inline TradespaceMap tradespace_map(const std::vector<double>& powers_w, const std::vector<double>& diameters_m,
                                    const SystemConfig& base, const damage::DroneModel& drone, double target_prob,
                                    LineLoss line_loss, unsigned threads = 1) {
  for (double p : powers_w)
    if (!(p > 0.0)) throw std::domain_error("tradespace: powers must be > 0");
  for (double d : diameters_m)
    if (!(d > 0.0)) throw std::domain_error("tradespace: diameters must be > 0");
  if (!(target_prob > 0.0 && target_prob < 1.0)) throw std::domain_error("tradespace: target must lie in (0, 1)");

  TradespaceMap map;
  map.power_axis = powers_w;
  map.diameter_axis = diameters_m;
  map.target_prob = target_prob;
  map.r_target.assign(powers_w.size() * diameters_m.size(), TradespaceMap::kBeyondEnvelope);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next.fetch_add(1); cell < map.r_target.size(); cell = next.fetch_add(1)) {
      SystemConfig c = base;
      c.transmit_power_w = powers_w[cell / diameters_m.size()];
      c.dish_diameter_m = diameters_m[cell % diameters_m.size()];
      c.duty_cycle = 1.0;
      const auto res = damage::kill_range(c, drone, target_prob, line_loss);
      if (res.found()) map.r_target[cell] = res.range_m;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return map;
}

//------------------------------------------------------------------------//
// Exposure safety

struct SafetyLimits {
  double occupational_wpm2 = 50.0;
  double general_public_wpm2 = 10.0;
};

/*!
 * Boresight distance at which the power density falls to limit. Exposure
 * is judged on time-averaged power unless time_averaged is false.
 */
inline double safety_distance(const SystemConfig& config, double limit_wpm2, LineLoss line_loss,
                              bool time_averaged = true) {
  if (!(limit_wpm2 > 0.0)) throw std::domain_error("safety_distance: limit must be > 0");
  const double p = time_averaged ? config.transmit_power_w : config.peak_power_w();
  const double eta = line_loss == LineLoss::included ? config.line_efficiency() : 1.0;
  return std::sqrt(p * eta * gain_of(config) / (4.0 * kPi * limit_wpm2));
}

//------------------------------------------------------------------------//
// Efficiency chain and thermal load

struct Stage {
  std::string name;
  double efficiency = 1.0;
};

struct EfficiencyChain {
  std::vector<Stage> stages{{"psu", 0.90}, {"magnetron", 0.70}, {"waveguide", 0.98}, {"feed", 0.97},
                            {"radome", 1.0}};

  void validate() const {
    if (stages.empty()) throw std::domain_error("efficiency chain is empty");
    for (const auto& s : stages)
      if (!(s.efficiency > 0.0 && s.efficiency <= 1.0))
        throw std::domain_error("stage '" + s.name + "' efficiency must lie in (0, 1]");
  }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < stages.size(); ++i)
      if (stages[i].name == name) return i;
    throw std::domain_error("no stage named '" + name + "'");
  }

  double end_to_end() const {
    double e = 1.0;
    for (const auto& s : stages) e *= s.efficiency;
    return e;
  }
};

struct StagePower {
  std::string name;
  double efficiency = 1.0;
  double input_w = 0.0;
  double output_w = 0.0;
  double heat_w = 0.0;
  double cumulative_efficiency = 1.0;
};

//! Stage-by-stage powers for a given wall-plug input.
inline std::vector<StagePower> efficiency_chain_report(double wall_power_w, const EfficiencyChain& chain) {
  if (!(wall_power_w > 0.0)) throw std::domain_error("efficiency_chain_report: wall power must be > 0");
  chain.validate();
  std::vector<StagePower> out;
  double p = wall_power_w;
  double cumulative = 1.0;
  for (const auto& s : chain.stages) {
    cumulative *= s.efficiency;
    const double next = p * s.efficiency;
    out.push_back({s.name, s.efficiency, p, next, p - next, cumulative});
    p = next;
  }
  return out;
}

enum class Cooling { forced_air, liquid };

inline const char* to_string(Cooling c) { return c == Cooling::liquid ? "liquid" : "forced-air"; }

struct ThermalBudget {
  std::vector<StagePower> stages;
  double total_heat_w = 0.0;
  double duty_cycle = 1.0;
  double average_heat_w = 0.0;
  double cooling_threshold_w = 5.0e3;
  Cooling cooling = Cooling::forced_air;
  //! Duty cycle at which the average heat reaches the threshold.
  double duty_at_threshold = 1.0;
};

/*!
 * Heat dissipated in each stage when the RF source (stage `source`) puts
 * out rf_power_w during the on-time. Average heat scales with duty.
 */
inline ThermalBudget thermal_budget(double rf_power_w, const EfficiencyChain& chain, double duty_cycle,
                                    const std::string& source = "magnetron", double cooling_threshold_w = 5.0e3) {
  if (!(rf_power_w > 0.0)) throw std::domain_error("thermal_budget: RF power must be > 0");
  if (!(duty_cycle >= 0.0 && duty_cycle <= 1.0)) throw std::domain_error("thermal_budget: duty must lie in [0, 1]");
  chain.validate();
  const std::size_t src = chain.index_of(source);
  double wall = rf_power_w;
  for (std::size_t i = 0; i <= src; ++i) wall /= chain.stages[i].efficiency;

  ThermalBudget t;
  t.stages = efficiency_chain_report(wall, chain);
  for (const auto& s : t.stages) t.total_heat_w += s.heat_w;
  t.duty_cycle = duty_cycle;
  t.average_heat_w = t.total_heat_w * duty_cycle;
  t.cooling_threshold_w = cooling_threshold_w;
  t.cooling = t.average_heat_w > cooling_threshold_w ? Cooling::liquid : Cooling::forced_air;
  t.duty_at_threshold = std::min(1.0, cooling_threshold_w / t.total_heat_w);
  return t;
}

//------------------------------------------------------------------------//
// Dwell time

struct DwellParams {
  double fluence_threshold_jpcm2 = 0.1;
};

//! Time for the boresight fluence to reach the threshold, in seconds.
inline double dwell_time(const SystemConfig& config, double range_m, LineLoss line_loss,
                         const DwellParams& params = {}) {
  if (!(params.fluence_threshold_jpcm2 > 0.0)) throw std::domain_error("dwell_time: threshold must be > 0");
  const double threshold_jpm2 = params.fluence_threshold_jpcm2 * 1.0e4;
  return threshold_jpm2 / power_density(config, range_m, line_loss);
}

//! Accumulated fluence in J/cm^2.
inline double energy_accumulation(double power_density_wpm2, double time_s) {
  return power_density_wpm2 * time_s * 1.0e-4;
}

//------------------------------------------------------------------------//
// Dish trade table

struct DishTradeRow {
  double diameter_m = 0.0;
  double gain_dbi = 0.0;
  double beamwidth_deg = 0.0;
  double footprint_m = 0.0;
  // Mechanical data exist only for catalogued sizes; NaN otherwise.
  double weight_min_kg = std::numeric_limits<double>::quiet_NaN();
  double weight_max_kg = std::numeric_limits<double>::quiet_NaN();
  double wind_load_n = std::numeric_limits<double>::quiet_NaN();
};

struct DishMechanics {
  double diameter_m, weight_min_kg, weight_max_kg, wind_load_n;
};

inline constexpr DishMechanics kDishCatalog[] = {
    {0.40, 2.0, 3.0, 40.0}, {0.60, 4.0, 6.0, 90.0}, {0.80, 8.0, 12.0, 160.0}, {1.00, 12.0, 18.0, 250.0}};

inline std::vector<DishTradeRow> dish_trade_table(const std::vector<double>& diameters_m, const SystemConfig& config,
                                                  double footprint_range_m = 30.0) {
  std::vector<DishTradeRow> rows;
  const double lambda = config.wavelength_m();
  for (double d : diameters_m) {
    DishTradeRow row;
    row.diameter_m = d;
    row.gain_dbi = to_dbi(antenna_gain(d, lambda, config.aperture_efficiency));
    row.beamwidth_deg = half_power_beamwidth(d, lambda);
    row.footprint_m = beam_footprint(footprint_range_m, row.beamwidth_deg);
    for (const auto& m : kDishCatalog) {
      if (std::fabs(m.diameter_m - d) < 1e-3) {
        row.weight_min_kg = m.weight_min_kg;
        row.weight_max_kg = m.weight_max_kg;
        row.wind_load_n = m.wind_load_n;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hpmsim::analysis
