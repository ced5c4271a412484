#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hpmsim/core_physics.hpp"

namespace hpmsim::damage {

//! Sigmoid damage parameters for one drone subsystem; fields in V/m.
struct SubsystemModel {
  std::string name;
  double e50 = 0.0;
  double sigma_e = 0.0;

  void validate() const {
    if (name.empty()) throw std::domain_error("subsystem name must not be empty");
    if (!(e50 > 0.0)) throw std::domain_error("subsystem '" + name + "': e50 must be > 0");
    if (!(sigma_e > 0.0)) throw std::domain_error("subsystem '" + name + "': sigma_e must be > 0");
  }
};

//! Ordered, non-empty set of subsystems; the drone is lost if any one fails.
class DroneModel {
 public:
  explicit DroneModel(std::vector<SubsystemModel> subsystems) : subsystems_(std::move(subsystems)) {
    if (subsystems_.empty()) throw std::domain_error("drone model needs at least one subsystem");
    std::set<std::string> seen;
    for (const auto& s : subsystems_) {
      s.validate();
      if (!seen.insert(s.name).second)
        throw std::domain_error("duplicate subsystem name '" + s.name + "'");
    }
  }

  //! GPS LNA, flight controller, ESC, camera, BMS.
  static DroneModel baseline() {
    return DroneModel({{"gps", 150.0, 30.0},
                       {"flight_controller", 250.0, 50.0},
                       {"esc", 300.0, 60.0},
                       {"camera", 200.0, 40.0},
                       {"bms", 350.0, 70.0}});
  }

  const std::vector<SubsystemModel>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }

 private:
  std::vector<SubsystemModel> subsystems_;
};

//! Logistic 1/(1+exp(-(E-E50)/sigma)); exponent clamped to +-500.
inline double sigmoid(double efield_vpm, double e50, double sigma_e) {
  const double z = std::clamp((efield_vpm - e50) / sigma_e, -500.0, 500.0);
  return 1.0 / (1.0 + std::exp(-z));
}

inline double subsystem_kill_prob(double efield_vpm, const SubsystemModel& model) {
  if (!(efield_vpm >= 0.0)) throw std::domain_error("subsystem_kill_prob: negative field");
  return sigmoid(efield_vpm, model.e50, model.sigma_e);
}

//! Serial system: 1 - prod(1 - p_i).
template <typename Range>
double system_kill_prob_of(double efield_vpm, const Range& subsystems) {
  if (!(efield_vpm >= 0.0)) throw std::domain_error("system_kill_prob: negative field");
  double survive = 1.0;
  for (const SubsystemModel& s : subsystems) survive *= 1.0 - sigmoid(efield_vpm, s.e50, s.sigma_e);
  return 1.0 - survive;
}

inline double system_kill_prob(double efield_vpm, const DroneModel& drone) {
  return system_kill_prob_of(efield_vpm, drone.subsystems());
}

struct KillRangeResult {
  enum class Status {
    found,
    //! Target not reached even at the far-field boundary.
    unreachable,
    //! Target still exceeded at the 10 km search ceiling.
    beyond_ceiling,
  };
  Status status = Status::unreachable;
  double range_m = 0.0;
  //! Lower search bound (the far-field distance of the dish).
  double search_floor_m = 0.0;

  bool found() const { return status == Status::found; }
};

inline constexpr double kKillRangeCeiling = 10.0e3;

/*!
 * Range at which the system kill probability falls to target_prob, for the
 * peak power of config. Bisection on [far-field distance, 10 km]; the kill
 * probability is strictly decreasing in range on that interval.
 */
inline KillRangeResult kill_range(const SystemConfig& config, const DroneModel& drone, double target_prob,
                                  LineLoss line_loss) {
  if (!(target_prob > 0.0 && target_prob < 1.0))
    throw std::domain_error("kill_range: target probability must lie in (0, 1)");
  const SystemConfig peak = config.at_peak();
  auto prob_at = [&](double r) { return system_kill_prob(efield_at(peak, r, line_loss), drone); };

  KillRangeResult out;
  double lo = far_field_distance(peak.dish_diameter_m, peak.wavelength_m());
  double hi = kKillRangeCeiling;
  out.search_floor_m = lo;
  if (lo <= 0.0) lo = 1e-6;
  if (prob_at(lo) <= target_prob) {
    out.status = KillRangeResult::Status::unreachable;
    return out;
  }
  if (prob_at(hi) >= target_prob) {
    out.status = KillRangeResult::Status::beyond_ceiling;
    out.range_m = hi;
    return out;
  }
  // Far tighter than 1 mm so the probability round-trip residual stays < 1e-6.
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (prob_at(mid) > target_prob)
      lo = mid;
    else
      hi = mid;
  }
  out.status = KillRangeResult::Status::found;
  out.range_m = 0.5 * (lo + hi);
  return out;
}

}  // namespace hpmsim::damage
