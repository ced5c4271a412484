#pragma once

#include <cmath>
#include <stdexcept>

namespace hpmsim::coupling {

/*!
 * Geometry of one victim conductor.
 *
 * orientation_factor is the projection of the incident E-vector onto the
 * wire axis; see orientation_factor() for the |sin| dipole pattern helper.
 */
struct CouplingParams {
  double wire_length_m = 0.06;
  double orientation_factor = 1.0;
  double polarization_efficiency = 1.0;
  double quality_factor = 10.0;
  double resonance_width_m = 0.02;

  void validate() const {
    if (!(wire_length_m > 0.0)) throw std::domain_error("wire_length must be > 0");
    if (!(orientation_factor >= 0.0 && orientation_factor <= 1.0))
      throw std::domain_error("orientation_factor must lie in [0, 1]");
    if (!(polarization_efficiency >= 0.1 && polarization_efficiency <= 1.0))
      throw std::domain_error("polarization_efficiency must lie in [0.1, 1]");
    if (!(quality_factor >= 1.0)) throw std::domain_error("quality_factor must be >= 1");
    if (!(resonance_width_m > 0.0)) throw std::domain_error("resonance_width must be > 0");
  }
};

//! Dipole pattern projection |sin(theta)|, theta between wire axis and E-vector.
inline double orientation_factor(double wire_angle_rad) { return std::fabs(std::sin(wire_angle_rad)); }

//! Short-dipole open-circuit voltage, E * (L/2) * F * sqrt(eta_pol).
inline double induced_voltage(double efield_vpm, const CouplingParams& p) {
  if (!(efield_vpm >= 0.0)) throw std::domain_error("induced_voltage: negative field");
  p.validate();
  return efield_vpm * (p.wire_length_m / 2.0) * p.orientation_factor *
         std::sqrt(p.polarization_efficiency);
}

//! Gaussian enhancement 1 + (Q-1) exp(-(L - lambda/2)^2 / (2 sigma_L^2)); peaks at Q.
inline double resonance_factor(double wire_length_m, double wavelength_m, double q, double sigma_l_m) {
  if (!(wire_length_m > 0.0) || !(wavelength_m > 0.0) || !(q > 0.0) || !(sigma_l_m > 0.0))
    throw std::domain_error("resonance_factor: inputs must be positive");
  const double d = wire_length_m - wavelength_m / 2.0;
  return 1.0 + (q - 1.0) * std::exp(-d * d / (2.0 * sigma_l_m * sigma_l_m));
}

inline double coupled_voltage(double efield_vpm, const CouplingParams& p, double wavelength_m) {
  return induced_voltage(efield_vpm, p) *
         resonance_factor(p.wire_length_m, wavelength_m, p.quality_factor, p.resonance_width_m);
}

/*!
 * Voltage on a wire of length L relative to an ideally oriented half-wave
 * wire in the same field. Used to turn a free-space field into an effective
 * field seen by the victim circuit; equals 1 at L = lambda/2.
 */
inline double relative_coupling(double wire_length_m, double wavelength_m, double q, double sigma_l_m) {
  const double half_wave = wavelength_m / 2.0;
  return (wire_length_m * resonance_factor(wire_length_m, wavelength_m, q, sigma_l_m)) /
         (half_wave * resonance_factor(half_wave, wavelength_m, q, sigma_l_m));
}

}  // namespace hpmsim::coupling
