#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hpmsim/binomial.hpp"
#include "hpmsim/core_physics.hpp"
#include "hpmsim/coupling.hpp"
#include "hpmsim/damage.hpp"
#include "hpmsim/random.hpp"

namespace hpmsim::mc {

//! single_sigmoid: one ESC-like sigmoid with sampled E50/sigma (the
//! reference listing). full_drone: every subsystem perturbed, combined
//! serially, with the field weighted by wire-length coupling.
enum class Variant { single_sigmoid, full_drone };

inline const char* to_string(Variant v) { return v == Variant::single_sigmoid ? "listing2" : "full"; }

//! Beamwidth used to normalise the pointing error.
enum class BeamwidthMode { fixed, sampled };

struct Normal {
  double mean = 0.0;
  double sd = 0.0;
};

struct Uniform {
  double lo = 0.0;
  double hi = 0.0;
};

//! Accepts lo < x <= hi.
struct Bounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const { return x > lo && x <= hi; }
};

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*!
 * Sampling distributions for one campaign. Normals are truncated by
 * rejection to their bounds; sampled sigma_E is floored (not rejected) at
 * sigma_e_floor.
 */
struct McDistributionSpec {
  Normal power_w{25.0e3, 1250.0};
  Bounds power_bounds{0.0};
  Normal dish_m{0.60, 0.005};
  Bounds dish_bounds{0.0};
  Uniform aperture_efficiency{0.50, 0.60};
  double pointing_sigma_deg = 1.0;
  Uniform polarization_angle_rad{0.0, kPi};
  Uniform wire_length_m{0.05, 0.25};
  double e50_relative_sigma = 0.15;
  double sigma_e_relative_sigma = 0.15;
  Bounds e50_bounds{0.0};
  double sigma_e_floor = 10.0;
  //! Nominal sigmoid of the single-sigmoid variant (sampled at +-15%).
  damage::SubsystemModel single_sigmoid{"listing2", 300.0, 60.0};

  void validate() const {
    auto check = [](bool ok, const char* what) {
      if (!ok) throw SpecError(std::string("montecarlo spec: ") + what);
    };
    check(power_w.sd >= 0.0 && dish_m.sd >= 0.0, "standard deviations must be >= 0");
    check(pointing_sigma_deg >= 0.0, "pointing sigma must be >= 0");
    check(e50_relative_sigma >= 0.0 && sigma_e_relative_sigma >= 0.0, "relative sigmas must be >= 0");
    check(aperture_efficiency.lo <= aperture_efficiency.hi, "aperture bounds out of order");
    check(aperture_efficiency.lo > 0.0 && aperture_efficiency.hi <= 1.0, "aperture efficiency must lie in (0, 1]");
    check(polarization_angle_rad.lo <= polarization_angle_rad.hi, "polarization bounds out of order");
    check(wire_length_m.lo <= wire_length_m.hi && wire_length_m.lo > 0.0, "wire length bounds invalid");
    check(power_bounds.lo < power_bounds.hi && power_bounds.lo >= 0.0, "power bounds invalid");
    check(dish_bounds.lo < dish_bounds.hi && dish_bounds.lo >= 0.0, "dish bounds invalid");
    check(e50_bounds.lo >= 0.0 && e50_bounds.lo < e50_bounds.hi, "e50 bounds invalid");
    check(sigma_e_floor > 0.0, "sigma_e floor must be > 0");
    single_sigmoid.validate();
  }
};

//! One trial's sampled parameters.
struct TrialInputs {
  double power_w = 0.0;
  double dish_m = 0.0;
  double aperture_efficiency = 0.0;
  double pointing_error_deg = 0.0;
  double polarization_angle_rad = 0.0;
  double wire_length_m = 0.0;
  std::vector<damage::SubsystemModel> damage;
  //! Uniform(0,1) variate for the Bernoulli kill decision.
  double kill_draw = 0.5;
};

struct TrialRecord {
  TrialInputs inputs;
  double efield_vpm = 0.0;
  //! Field fed to the damage model (equals efield_vpm for single_sigmoid).
  double effective_field_vpm = 0.0;
  double p_kill = 0.0;
  bool kill = false;
};

struct TrialContext {
  SystemConfig base;
  LineLoss line_loss = LineLoss::included;
  Variant variant = Variant::single_sigmoid;
  BeamwidthMode beamwidth_mode = BeamwidthMode::fixed;
  double fixed_beamwidth_deg = 14.3;
  double quality_factor = 10.0;
  double resonance_width_m = 0.02;
};

inline constexpr int kMaxConsecutiveRejections = 1000;

//! Bernoulli decision: kill when the (0, 1) variate falls below p_kill.
inline bool kill_decision(double uniform_draw, double p_kill) { return uniform_draw < p_kill; }

namespace detail {

template <typename Draw>
double truncated(Draw&& draw, const Bounds& bounds, const char* name) {
  for (int i = 0; i < kMaxConsecutiveRejections; ++i) {
    const double x = draw();
    if (bounds.contains(x)) return x;
  }
  throw SpecError(std::string("montecarlo spec: too many rejections sampling ") + name);
}

}  // namespace detail

/*!
 * Draw one trial. Order is fixed: power, dish, aperture efficiency,
 * pointing error, polarization angle, wire length, then (E50, sigma_E) for
 * each nominal subsystem in order, then the kill variate. Normals use two
 * uniforms each; rejected draws are discarded and redrawn in place.
 */
inline TrialInputs sample_trial(rng::Stream& stream, const McDistributionSpec& spec,
                                std::span<const damage::SubsystemModel> nominal) {
  TrialInputs t;
  t.power_w = detail::truncated([&] { return stream.normal(spec.power_w.mean, spec.power_w.sd); },
                                spec.power_bounds, "power");
  t.dish_m = detail::truncated([&] { return stream.normal(spec.dish_m.mean, spec.dish_m.sd); },
                               spec.dish_bounds, "dish");
  t.aperture_efficiency = stream.uniform(spec.aperture_efficiency.lo, spec.aperture_efficiency.hi);
  t.pointing_error_deg = stream.rayleigh(spec.pointing_sigma_deg);
  t.polarization_angle_rad = stream.uniform(spec.polarization_angle_rad.lo, spec.polarization_angle_rad.hi);
  t.wire_length_m = stream.uniform(spec.wire_length_m.lo, spec.wire_length_m.hi);
  t.damage.reserve(nominal.size());
  for (const auto& s : nominal) {
    const double e50 = detail::truncated(
        [&] { return stream.normal(s.e50, spec.e50_relative_sigma * s.e50); }, spec.e50_bounds, "e50");
    const double sigma = std::max(stream.normal(s.sigma_e, spec.sigma_e_relative_sigma * s.sigma_e),
                                  spec.sigma_e_floor);
    t.damage.push_back({s.name, e50, sigma});
  }
  t.kill_draw = stream.uniform();
  return t;
}

inline TrialRecord run_trial(const TrialInputs& in, const TrialContext& ctx, double range_m) {
  if (!(range_m > 0.0)) throw std::domain_error("run_trial: range must be > 0");
  const double lambda = ctx.base.wavelength_m();
  const double gain = in.aperture_efficiency * std::pow(kPi * in.dish_m / lambda, 2);
  const double beamwidth = ctx.beamwidth_mode == BeamwidthMode::fixed
                               ? ctx.fixed_beamwidth_deg
                               : half_power_beamwidth(in.dish_m, lambda);
  const double g_point = pointing_loss(in.pointing_error_deg, beamwidth);
  const double pol = polarization_efficiency(in.polarization_angle_rad);
  const double eta = ctx.line_loss == LineLoss::included ? ctx.base.line_efficiency() : 1.0;
  const double eirp = in.power_w * eta * gain * g_point * pol;

  TrialRecord r;
  r.inputs = in;
  r.efield_vpm = std::sqrt(std::max(eirp / (4.0 * kPi * range_m * range_m), 0.0) * kFreeSpaceImpedance);
  if (ctx.variant == Variant::single_sigmoid) {
    // Wire length is sampled but does not enter this variant.
    r.effective_field_vpm = r.efield_vpm;
    const auto& s = in.damage.front();
    r.p_kill = damage::sigmoid(r.effective_field_vpm, s.e50, s.sigma_e);
  } else {
    r.effective_field_vpm =
        r.efield_vpm * coupling::relative_coupling(in.wire_length_m, lambda, ctx.quality_factor,
                                                   ctx.resonance_width_m);
    r.p_kill = damage::system_kill_prob_of(r.effective_field_vpm, in.damage);
  }
  r.kill = kill_decision(in.kill_draw, r.p_kill);
  return r;
}

//! Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct McSummary {
  std::uint64_t n_trials = 0;
  std::uint64_t n_kills = 0;
  double kill_prob = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double efield_mean = 0.0;
  double efield_std = 0.0;
  //! Mean of the per-trial kill probabilities (lower-variance estimate).
  double mean_p_kill = 0.0;
  double efield_sum = 0.0;
  double efield_sq_sum = 0.0;
  double range_m = 0.0;
  std::uint64_t seed = 0;
  Variant variant = Variant::single_sigmoid;
};

struct CampaignSetup {
  McDistributionSpec spec;
  TrialContext context;
  damage::DroneModel drone = damage::DroneModel::baseline();
  double confidence = 0.95;
};

inline std::vector<damage::SubsystemModel> nominal_damage_profile(const CampaignSetup& setup) {
  if (setup.context.variant == Variant::single_sigmoid) return {setup.spec.single_sigmoid};
  return setup.drone.subsystems();
}

//! Trial i always draws from stream (seed, i), so every range sees the same parameter draws.
inline TrialRecord simulate_trial(const CampaignSetup& setup, std::span<const damage::SubsystemModel> nominal,
                                  double range_m, std::uint64_t seed, std::uint64_t trial_index) {
  rng::Stream stream(seed, trial_index);
  return run_trial(sample_trial(stream, setup.spec, nominal), setup.context, range_m);
}

inline std::vector<TrialRecord> simulate_trials(const CampaignSetup& setup, double range_m, std::uint64_t seed,
                                                std::uint64_t first, std::uint64_t count) {
  const auto nominal = nominal_damage_profile(setup);
  std::vector<TrialRecord> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(simulate_trial(setup, nominal, range_m, seed, first + i));
  return out;
}

/*!
 * Run n_trials independent trials at one range.
 *
 * Trials are grouped into fixed blocks whose partial sums are combined in
 * block order, so the result is bit-identical for any thread count.
 * threads = 0 uses hardware concurrency.
 */
inline McSummary run_campaign(const CampaignSetup& setup, double range_m, std::uint64_t n_trials,
                              std::uint64_t seed, unsigned threads = 0) {
  if (n_trials < 1) throw std::domain_error("run_campaign: need at least one trial");
  if (!(range_m > 0.0)) throw std::domain_error("run_campaign: range must be > 0");
  setup.spec.validate();
  setup.context.base.validate();
  const auto nominal = nominal_damage_profile(setup);

  constexpr std::uint64_t kBlock = 512;
  const std::uint64_t n_blocks = (n_trials + kBlock - 1) / kBlock;
  struct Partial {
    std::uint64_t kills = 0;
    CompensatedSum e;
    CompensatedSum e2;
    CompensatedSum p;
  };
  std::vector<Partial> partials(n_blocks);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
      Partial& part = partials[b];
      const std::uint64_t end = std::min(n_trials, (b + 1) * kBlock);
      for (std::uint64_t i = b * kBlock; i < end; ++i) {
        const TrialRecord r = simulate_trial(setup, nominal, range_m, seed, i);
        part.kills += r.kill ? 1 : 0;
        part.e.add(r.efield_vpm);
        part.e2.add(r.efield_vpm * r.efield_vpm);
        part.p.add(r.p_kill);
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  Partial total;
  for (const auto& part : partials) {
    total.kills += part.kills;
    total.e.add(part.e);
    total.e2.add(part.e2);
    total.p.add(part.p);
  }

  McSummary s;
  s.n_trials = n_trials;
  s.n_kills = total.kills;
  s.range_m = range_m;
  s.seed = seed;
  s.variant = setup.context.variant;
  const auto n = static_cast<double>(n_trials);
  s.kill_prob = static_cast<double>(total.kills) / n;
  const auto ci = stats::clopper_pearson(total.kills, n_trials, setup.confidence);
  s.ci_low = ci.low;
  s.ci_high = ci.high;
  s.efield_sum = total.e.value();
  s.efield_sq_sum = total.e2.value();
  s.efield_mean = s.efield_sum / n;
  s.mean_p_kill = total.p.value() / n;
  if (n_trials > 1) {
    const double var = (s.efield_sq_sum - n * s.efield_mean * s.efield_mean) / (n - 1.0);
    s.efield_std = std::sqrt(std::max(var, 0.0));
  }
  return s;
}

}  // namespace hpmsim::mc
