#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hpmsim/constants.hpp"

namespace hpmsim {

//! Whether the feed-line efficiency (waveguide * feed * radome) is applied
//! to the transmit power before it reaches the aperture.
enum class LineLoss { excluded, included };

inline const char* to_string(LineLoss l) {
  return l == LineLoss::included ? "on" : "off";
}

/*!
 * Transmitter, antenna and feed-line parameters for one scenario.
 *
 * transmit_power_w is the CW or time-averaged power; the peak power of a
 * pulsed waveform is transmit_power_w / duty_cycle.
 */
struct SystemConfig {
  double transmit_power_w = 25.0e3;
  double dish_diameter_m = 0.60;
  double frequency_hz = 2.45e9;
  double aperture_efficiency = 0.55;
  double eta_waveguide = 0.98;
  double eta_feed = 0.97;
  double eta_radome = 1.0;
  double duty_cycle = 1.0;

  double wavelength_m() const { return kSpeedOfLight / frequency_hz; }
  double line_efficiency() const { return eta_waveguide * eta_feed * eta_radome; }
  double peak_power_w() const { return transmit_power_w / duty_cycle; }

  //! Copy with the peak power as a CW equivalent (duty = 1).
  SystemConfig at_peak() const {
    SystemConfig c = *this;
    c.transmit_power_w = peak_power_w();
    c.duty_cycle = 1.0;
    return c;
  }

  void validate() const {
    auto fraction = [](double v, const char* name) {
      if (!(v > 0.0 && v <= 1.0))
        throw std::domain_error(std::string(name) + " must lie in (0, 1]");
    };
    if (!(transmit_power_w > 0.0)) throw std::domain_error("transmit_power must be > 0");
    if (!(dish_diameter_m > 0.0)) throw std::domain_error("dish_diameter must be > 0");
    if (!(frequency_hz > 0.0)) throw std::domain_error("frequency must be > 0");
    fraction(aperture_efficiency, "aperture_efficiency");
    fraction(eta_waveguide, "line_efficiency_waveguide");
    fraction(eta_feed, "line_efficiency_feed");
    fraction(eta_radome, "line_efficiency_radome");
    fraction(duty_cycle, "duty_cycle");
  }
};

struct PropagationResult {
  double range_m = 0.0;
  double power_density_wpm2 = 0.0;
  double efield_vpm = 0.0;
  double gain_linear = 0.0;
  double gain_dbi = 0.0;
  double beamwidth_3db_deg = 0.0;
  //! Range lies inside 2D^2/lambda, where the plane-wave model is not valid.
  bool near_field = false;
};

//! Parabolic reflector gain, eta_ap * (pi D / lambda)^2.
inline double antenna_gain(double diameter_m, double wavelength_m, double aperture_efficiency) {
  if (!(diameter_m > 0.0) || !(wavelength_m > 0.0) || !(aperture_efficiency > 0.0))
    throw std::domain_error("antenna_gain: inputs must be positive");
  if (aperture_efficiency > 1.0)
    throw std::domain_error("antenna_gain: aperture efficiency exceeds 1");
  const double x = kPi * diameter_m / wavelength_m;
  return aperture_efficiency * x * x;
}

inline double to_dbi(double gain_linear) { return 10.0 * std::log10(gain_linear); }

//! -3 dB beamwidth in degrees, 70 lambda / D.
inline double half_power_beamwidth(double diameter_m, double wavelength_m) {
  if (!(diameter_m > 0.0) || !(wavelength_m > 0.0))
    throw std::domain_error("half_power_beamwidth: inputs must be positive");
  return 70.0 * wavelength_m / diameter_m;
}

inline double far_field_distance(double diameter_m, double wavelength_m) {
  if (!(diameter_m >= 0.0) || !(wavelength_m > 0.0))
    throw std::domain_error("far_field_distance: invalid input");
  return 2.0 * diameter_m * diameter_m / wavelength_m;
}

inline double gain_of(const SystemConfig& config) {
  return antenna_gain(config.dish_diameter_m, config.wavelength_m(), config.aperture_efficiency);
}

//! Boresight power density in W/m^2 from the average/CW transmit power.
inline double power_density(const SystemConfig& config, double range_m, LineLoss line_loss) {
  if (!(range_m > 0.0)) throw std::domain_error("power_density: range must be > 0");
  const double eta = line_loss == LineLoss::included ? config.line_efficiency() : 1.0;
  return config.transmit_power_w * eta * gain_of(config) / (4.0 * kPi * range_m * range_m);
}

inline double efield(double power_density_wpm2) {
  if (!(power_density_wpm2 >= 0.0)) throw std::domain_error("efield: negative power density");
  return std::sqrt(power_density_wpm2 * kFreeSpaceImpedance);
}

inline double efield_at(const SystemConfig& config, double range_m, LineLoss line_loss) {
  return efield(power_density(config, range_m, line_loss));
}

inline PropagationResult propagate(const SystemConfig& config, double range_m, LineLoss line_loss) {
  PropagationResult r;
  r.range_m = range_m;
  r.power_density_wpm2 = power_density(config, range_m, line_loss);
  r.efield_vpm = efield(r.power_density_wpm2);
  r.gain_linear = gain_of(config);
  r.gain_dbi = to_dbi(r.gain_linear);
  r.beamwidth_3db_deg = half_power_beamwidth(config.dish_diameter_m, config.wavelength_m());
  r.near_field = range_m < far_field_distance(config.dish_diameter_m, config.wavelength_m());
  return r;
}

/*!
 * Gaussian pointing-loss factor exp(-2.76 theta_norm^2), with the error
 * normalised by the half beamwidth. Angles in degrees.
 */
inline double pointing_loss(double error_angle_deg, double beamwidth_3db_deg) {
  if (!(beamwidth_3db_deg > 0.0)) throw std::domain_error("pointing_loss: beamwidth must be > 0");
  if (!(error_angle_deg >= 0.0)) throw std::domain_error("pointing_loss: negative error angle");
  const double norm = error_angle_deg / (beamwidth_3db_deg / 2.0);
  return std::exp(-2.76 * norm * norm);
}

//! cos^2 of the mismatch angle (radians), floored at 0.1 for cross-pol coupling.
inline double polarization_efficiency(double angle_rad) {
  const double c = std::cos(angle_rad);
  return std::max(c * c, 0.1);
}

inline double pulsed_peak_power(double average_power_w, double duty_cycle) {
  if (!(duty_cycle > 0.0 && duty_cycle <= 1.0))
    throw std::domain_error("pulsed_peak_power: duty cycle must lie in (0, 1]");
  return average_power_w / duty_cycle;
}

//! -3 dB beam diameter at range, 2 R tan(theta/2).
inline double beam_footprint(double range_m, double beamwidth_3db_deg) {
  if (!(range_m >= 0.0)) throw std::domain_error("beam_footprint: negative range");
  if (!(beamwidth_3db_deg > 0.0 && beamwidth_3db_deg < 180.0))
    throw std::domain_error("beam_footprint: beamwidth must lie in (0, 180) degrees");
  return 2.0 * range_m * std::tan(deg_to_rad(beamwidth_3db_deg) / 2.0);
}

}  // namespace hpmsim
