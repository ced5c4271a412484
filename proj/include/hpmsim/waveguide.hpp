#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hpmsim/constants.hpp"

namespace hpmsim::waveguide {

//! Rectangular guide; defaults are WR-340 in copper.
struct WaveguideSpec {
  double width_a_m = 0.08636;
  double height_b_m = 0.04318;
  double wall_conductivity = 5.8e7;  // S/m

  void validate() const {
    if (!(height_b_m > 0.0 && width_a_m > height_b_m))
      throw std::domain_error("waveguide requires a > b > 0");
    if (!(wall_conductivity > 0.0)) throw std::domain_error("wall conductivity must be > 0");
  }
};

enum class ModeFamily { te, tm };

inline const char* to_string(ModeFamily f) { return f == ModeFamily::te ? "TE" : "TM"; }

struct ModeEntry {
  ModeFamily family = ModeFamily::te;
  int m = 0;
  int n = 0;
  double cutoff_hz = 0.0;
};

class EvanescentModeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

//! f_c = (c/2) sqrt((m/a)^2 + (n/b)^2). TE excludes (0,0); TM needs m, n >= 1.
inline double cutoff_frequency(const WaveguideSpec& spec, ModeFamily family, int m, int n) {
  spec.validate();
  if (m < 0 || n < 0) throw std::domain_error("mode indices must be non-negative");
  if (family == ModeFamily::te && m == 0 && n == 0) throw std::domain_error("TE00 does not exist");
  if (family == ModeFamily::tm && (m < 1 || n < 1)) throw std::domain_error("TM modes need m, n >= 1");
  const double x = m / spec.width_a_m;
  const double y = n / spec.height_b_m;
  return 0.5 * kSpeedOfLight * std::sqrt(x * x + y * y);
}

inline double te10_cutoff(const WaveguideSpec& spec) { return cutoff_frequency(spec, ModeFamily::te, 1, 0); }

//! All TE/TM modes with indices up to max_index and cutoff <= f_max, ascending.
inline std::vector<ModeEntry> mode_chart(const WaveguideSpec& spec, double f_max_hz, int max_index = 5) {
  if (!(f_max_hz > 0.0)) throw std::domain_error("mode_chart: f_max must be > 0");
  std::vector<ModeEntry> modes;
  for (int m = 0; m <= max_index; ++m) {
    for (int n = 0; n <= max_index; ++n) {
      for (ModeFamily fam : {ModeFamily::te, ModeFamily::tm}) {
        if (fam == ModeFamily::te && m == 0 && n == 0) continue;
        if (fam == ModeFamily::tm && (m == 0 || n == 0)) continue;
        const double fc = cutoff_frequency(spec, fam, m, n);
        if (fc <= f_max_hz) modes.push_back({fam, m, n, fc});
      }
    }
  }
  std::sort(modes.begin(), modes.end(), [](const ModeEntry& a, const ModeEntry& b) {
    return std::tie(a.cutoff_hz, a.family, a.m, a.n) < std::tie(b.cutoff_hz, b.family, b.m, b.n);
  });
  return modes;
}

inline double surface_resistance(double frequency_hz, double conductivity) {
  if (!(frequency_hz > 0.0) || !(conductivity > 0.0))
    throw std::domain_error("surface_resistance: inputs must be positive");
  return std::sqrt(kPi * frequency_hz * kVacuumPermeability / conductivity);
}

/*!
 * TE10 conductor loss in Np/m:
 *
 *   alpha = Rs / (a b beta' eta0) * (2b (fc/f)^2 + a [1 - (fc/f)^2])
 *
 * with beta' = sqrt(1 - (fc/f)^2) the propagation constant normalised to
 * the free-space wavenumber, which keeps the expression dimensionally 1/m.
 */
inline double te10_attenuation_np(const WaveguideSpec& spec, double frequency_hz) {
  const double fc = te10_cutoff(spec);
  if (!(frequency_hz > fc))
    throw EvanescentModeError("te10_attenuation: frequency at or below TE10 cutoff");
  const double ratio2 = (fc / frequency_hz) * (fc / frequency_hz);
  const double beta_norm = std::sqrt(1.0 - ratio2);
  const double a = spec.width_a_m;
  const double b = spec.height_b_m;
  const double rs = surface_resistance(frequency_hz, spec.wall_conductivity);
  return rs / (a * b * beta_norm * kFreeSpaceImpedance) * (2.0 * b * ratio2 + a * (1.0 - ratio2));
}

inline double te10_attenuation_db(const WaveguideSpec& spec, double frequency_hz) {
  return kNeperToDecibel * te10_attenuation_np(spec, frequency_hz);
}

//! Phase constant beta = (2 pi f / c) sqrt(1 - (fc/f)^2) in rad/m.
inline double te10_phase_constant(const WaveguideSpec& spec, double frequency_hz) {
  const double fc = te10_cutoff(spec);
  if (!(frequency_hz > fc)) throw EvanescentModeError("te10_phase_constant: evanescent");
  const double r = fc / frequency_hz;
  return 2.0 * kPi * frequency_hz / kSpeedOfLight * std::sqrt(1.0 - r * r);
}

}  // namespace hpmsim::waveguide
