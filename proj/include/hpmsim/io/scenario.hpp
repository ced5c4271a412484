#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpmsim/core_physics.hpp"
#include "hpmsim/damage.hpp"
#include "hpmsim/io/table.hpp"
#include "hpmsim/montecarlo.hpp"

namespace hpmsim::io {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScenarioSyntaxError : public ScenarioError {
 public:
  ScenarioSyntaxError(int line, int column, const std::string& what)
      : ScenarioError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ScenarioValidationError : public ScenarioError {
 public:
  ScenarioValidationError(std::string field, const std::string& what)
      : ScenarioError(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

//------------------------------------------------------------------------//
// Sectioned key = value documents. '#' and ';' start comments; keys may
// repeat (the [drone] section uses this for its subsystem list).

struct IniEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<IniEntry> parse_ini(std::string_view text) {
  std::vector<IniEntry> out;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    const auto indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ScenarioSyntaxError(line_no, indent + static_cast<int>(line.size()), "expected ']'");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ScenarioSyntaxError(line_no, indent + 1, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ScenarioSyntaxError(line_no, indent, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ScenarioSyntaxError(line_no, indent, "missing key before '='");
    if (section.empty()) throw ScenarioSyntaxError(line_no, indent, "key outside of any [section]");
    out.push_back({section, std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return out;
}

//------------------------------------------------------------------------//

struct RunSettings {
  //! Unset: each subcommand picks its own default.
  std::optional<LineLoss> line_loss;
  mc::Variant variant = mc::Variant::single_sigmoid;
  std::uint64_t seed = 42;
  std::uint64_t trials = 10000;
  unsigned threads = 0;
};

struct OutputSettings {
  Format format = Format::csv;
  std::string path;
};

struct Scenario {
  SystemConfig system;
  damage::DroneModel drone = damage::DroneModel::baseline();
  mc::McDistributionSpec mc;
  //! Unset sampling means track the transmitter: power mean = peak power
  //! (sigma 5% of it), dish mean = dish diameter.
  std::optional<double> mc_power_mean_w;
  std::optional<double> mc_power_sigma_w;
  std::optional<double> mc_dish_mean_m;
  mc::BeamwidthMode beamwidth_mode = mc::BeamwidthMode::fixed;
  double fixed_beamwidth_deg = 14.3;
  double quality_factor = 10.0;
  double resonance_width_m = 0.02;
  RunSettings run;
  OutputSettings output;

  mc::McDistributionSpec resolved_mc() const {
    mc::McDistributionSpec spec = mc;
    spec.power_w.mean = mc_power_mean_w.value_or(system.peak_power_w());
    spec.power_w.sd = mc_power_sigma_w.value_or(0.05 * spec.power_w.mean);
    spec.dish_m.mean = mc_dish_mean_m.value_or(system.dish_diameter_m);
    return spec;
  }

  mc::CampaignSetup campaign_setup(LineLoss line_loss) const {
    mc::CampaignSetup s;
    s.spec = resolved_mc();
    s.drone = drone;
    s.context.base = system;
    s.context.line_loss = line_loss;
    s.context.variant = run.variant;
    s.context.beamwidth_mode = beamwidth_mode;
    s.context.fixed_beamwidth_deg = fixed_beamwidth_deg;
    s.context.quality_factor = quality_factor;
    s.context.resonance_width_m = resonance_width_m;
    return s;
  }
};

namespace detail {

inline double to_double(const IniEntry& e) {
  double v = 0.0;
  const auto* b = e.value.data();
  const auto* end = b + e.value.size();
  const auto res = std::from_chars(b, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ScenarioValidationError(e.section + "." + e.key,
                                  "'" + e.value + "' is not a number (line " + std::to_string(e.line) + ")");
  return v;
}

inline std::uint64_t to_u64(const IniEntry& e) {
  std::uint64_t v = 0;
  const auto* b = e.value.data();
  const auto* end = b + e.value.size();
  const auto res = std::from_chars(b, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ScenarioValidationError(e.section + "." + e.key, "'" + e.value + "' is not a non-negative integer (line " +
                                                               std::to_string(e.line) + ")");
  return v;
}

inline damage::SubsystemModel to_subsystem(const IniEntry& e) {
  std::vector<std::string> parts;
  std::stringstream ss(e.value);
  for (std::string p; std::getline(ss, p, ',');) parts.emplace_back(trim(p));
  if (parts.size() != 3)
    throw ScenarioValidationError("drone.subsystem", "expected 'name, e50, sigma_e' (line " +
                                                         std::to_string(e.line) + ")");
  IniEntry num = e;
  num.value = parts[1];
  const double e50 = to_double(num);
  num.value = parts[2];
  const double sigma = to_double(num);
  return {parts[0], e50, sigma};
}

}  // namespace detail

inline LineLoss parse_line_loss(std::string_view s) {
  if (s == "on" || s == "true") return LineLoss::included;
  if (s == "off" || s == "false") return LineLoss::excluded;
  throw std::invalid_argument("line loss must be 'on' or 'off', got '" + std::string(s) + "'");
}

inline mc::Variant parse_variant(std::string_view s) {
  if (s == "listing2" || s == "single") return mc::Variant::single_sigmoid;
  if (s == "full") return mc::Variant::full_drone;
  throw std::invalid_argument("variant must be 'listing2' or 'full', got '" + std::string(s) + "'");
}

//! Subsystem list from a drone profile document ([drone] section only).
inline damage::DroneModel parse_drone_profile(std::string_view text) {
  std::vector<damage::SubsystemModel> subs;
  for (const auto& e : parse_ini(text)) {
    if (e.section != "drone" || e.key != "subsystem")
      throw ScenarioValidationError(e.section + "." + e.key,
                                    "unknown key in drone profile (line " + std::to_string(e.line) + ")");
    subs.push_back(detail::to_subsystem(e));
  }
  try {
    return damage::DroneModel(std::move(subs));
  } catch (const std::domain_error& ex) {
    throw ScenarioValidationError("drone", ex.what());
  }
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/*!
 * Build a validated Scenario. Omitted keys keep the baseline defaults; an
 * empty document yields the baseline scenario. [drone] profile paths are
 * resolved against base_dir.
 */
inline Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {}) {
  Scenario sc;
  std::vector<damage::SubsystemModel> subsystems;
  std::optional<damage::DroneModel> profile;

  using Setter = std::function<void(const IniEntry&)>;
  auto num = [](double& target) -> Setter { return [&target](const IniEntry& e) { target = detail::to_double(e); }; };
  const std::map<std::string, Setter> setters = {
      {"system.power_w", num(sc.system.transmit_power_w)},
      {"system.dish_diameter_m", num(sc.system.dish_diameter_m)},
      {"system.frequency_hz", num(sc.system.frequency_hz)},
      {"system.aperture_efficiency", num(sc.system.aperture_efficiency)},
      {"system.eta_waveguide", num(sc.system.eta_waveguide)},
      {"system.eta_feed", num(sc.system.eta_feed)},
      {"system.eta_radome", num(sc.system.eta_radome)},
      {"system.duty_cycle", num(sc.system.duty_cycle)},
      {"drone.subsystem", [&](const IniEntry& e) { subsystems.push_back(detail::to_subsystem(e)); }},
      {"drone.profile",
       [&](const IniEntry& e) { profile = parse_drone_profile(read_text_file(base_dir / e.value)); }},
      {"montecarlo.power_mean_w", [&](const IniEntry& e) { sc.mc_power_mean_w = detail::to_double(e); }},
      {"montecarlo.power_sigma_w", [&](const IniEntry& e) { sc.mc_power_sigma_w = detail::to_double(e); }},
      {"montecarlo.dish_mean_m", [&](const IniEntry& e) { sc.mc_dish_mean_m = detail::to_double(e); }},
      {"montecarlo.dish_sigma_m", num(sc.mc.dish_m.sd)},
      {"montecarlo.aperture_min", num(sc.mc.aperture_efficiency.lo)},
      {"montecarlo.aperture_max", num(sc.mc.aperture_efficiency.hi)},
      {"montecarlo.pointing_sigma_deg", num(sc.mc.pointing_sigma_deg)},
      {"montecarlo.polarization_min_rad", num(sc.mc.polarization_angle_rad.lo)},
      {"montecarlo.polarization_max_rad", num(sc.mc.polarization_angle_rad.hi)},
      {"montecarlo.wire_min_m", num(sc.mc.wire_length_m.lo)},
      {"montecarlo.wire_max_m", num(sc.mc.wire_length_m.hi)},
      {"montecarlo.e50_relative_sigma", num(sc.mc.e50_relative_sigma)},
      {"montecarlo.sigma_e_relative_sigma", num(sc.mc.sigma_e_relative_sigma)},
      {"montecarlo.sigma_e_floor", num(sc.mc.sigma_e_floor)},
      {"montecarlo.single_e50", num(sc.mc.single_sigmoid.e50)},
      {"montecarlo.single_sigma_e", num(sc.mc.single_sigmoid.sigma_e)},
      {"montecarlo.fixed_beamwidth_deg", num(sc.fixed_beamwidth_deg)},
      {"montecarlo.quality_factor", num(sc.quality_factor)},
      {"montecarlo.resonance_width_m", num(sc.resonance_width_m)},
      {"montecarlo.beamwidth",
       [&](const IniEntry& e) {
         if (e.value == "fixed")
           sc.beamwidth_mode = mc::BeamwidthMode::fixed;
         else if (e.value == "sampled")
           sc.beamwidth_mode = mc::BeamwidthMode::sampled;
         else
           throw ScenarioValidationError("montecarlo.beamwidth", "expected 'fixed' or 'sampled'");
       }},
      {"run.seed", [&](const IniEntry& e) { sc.run.seed = detail::to_u64(e); }},
      {"run.trials", [&](const IniEntry& e) { sc.run.trials = detail::to_u64(e); }},
      {"run.threads", [&](const IniEntry& e) { sc.run.threads = static_cast<unsigned>(detail::to_u64(e)); }},
      {"run.variant", [&](const IniEntry& e) { sc.run.variant = parse_variant(e.value); }},
      {"run.line_loss", [&](const IniEntry& e) { sc.run.line_loss = parse_line_loss(e.value); }},
      {"output.format", [&](const IniEntry& e) { sc.output.format = parse_format(e.value); }},
      {"output.path", [&](const IniEntry& e) { sc.output.path = e.value; }},
  };

  for (const auto& e : parse_ini(text)) {
    const std::string field = e.section + "." + e.key;
    const auto it = setters.find(field);
    if (it == setters.end())
      throw ScenarioValidationError(field, "unknown key (line " + std::to_string(e.line) + ")");
    try {
      it->second(e);
    } catch (const std::invalid_argument& ex) {
      throw ScenarioValidationError(field, std::string(ex.what()) + " (line " + std::to_string(e.line) + ")");
    }
  }

  if (profile && !subsystems.empty())
    throw ScenarioValidationError("drone", "give either 'profile' or 'subsystem' entries, not both");
  try {
    if (profile) sc.drone = *profile;
    if (!subsystems.empty()) sc.drone = damage::DroneModel(std::move(subsystems));
  } catch (const std::domain_error& ex) {
    throw ScenarioValidationError("drone", ex.what());
  }

  // Map constituent-type invariants back onto field names.
  const auto& s = sc.system;
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ScenarioValidationError(field, what);
  };
  auto fraction = [&](double v, const char* field) { require(v > 0.0 && v <= 1.0, field, "must lie in (0, 1]"); };
  require(s.transmit_power_w > 0.0, "system.power_w", "must be > 0");
  require(s.dish_diameter_m > 0.0, "system.dish_diameter_m", "must be > 0");
  require(s.frequency_hz > 0.0, "system.frequency_hz", "must be > 0");
  fraction(s.aperture_efficiency, "system.aperture_efficiency");
  fraction(s.eta_waveguide, "system.eta_waveguide");
  fraction(s.eta_feed, "system.eta_feed");
  fraction(s.eta_radome, "system.eta_radome");
  fraction(s.duty_cycle, "system.duty_cycle");
  require(sc.run.trials >= 1, "run.trials", "must be >= 1");
  require(sc.fixed_beamwidth_deg > 0.0, "montecarlo.fixed_beamwidth_deg", "must be > 0");
  require(sc.quality_factor >= 1.0, "montecarlo.quality_factor", "must be >= 1");
  require(sc.resonance_width_m > 0.0, "montecarlo.resonance_width_m", "must be > 0");
  try {
    sc.resolved_mc().validate();
  } catch (const mc::SpecError& ex) {
    throw ScenarioValidationError("montecarlo", ex.what());
  }
  return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.parent_path());
}

//! Canonical key = value listing of every resolved field.
inline std::string canonical_text(const Scenario& sc) {
  std::ostringstream os;
  auto kv = [&](const char* k, double v) { os << k << '=' << format_number(v) << '\n'; };
  kv("system.power_w", sc.system.transmit_power_w);
  kv("system.dish_diameter_m", sc.system.dish_diameter_m);
  kv("system.frequency_hz", sc.system.frequency_hz);
  kv("system.aperture_efficiency", sc.system.aperture_efficiency);
  kv("system.eta_waveguide", sc.system.eta_waveguide);
  kv("system.eta_feed", sc.system.eta_feed);
  kv("system.eta_radome", sc.system.eta_radome);
  kv("system.duty_cycle", sc.system.duty_cycle);
  for (const auto& s : sc.drone.subsystems())
    os << "drone.subsystem=" << s.name << ',' << format_number(s.e50) << ',' << format_number(s.sigma_e) << '\n';
  const mc::McDistributionSpec spec = sc.resolved_mc();
  kv("montecarlo.power_mean_w", spec.power_w.mean);
  kv("montecarlo.power_sigma_w", spec.power_w.sd);
  kv("montecarlo.dish_mean_m", spec.dish_m.mean);
  kv("montecarlo.dish_sigma_m", spec.dish_m.sd);
  kv("montecarlo.aperture_min", sc.mc.aperture_efficiency.lo);
  kv("montecarlo.aperture_max", sc.mc.aperture_efficiency.hi);
  kv("montecarlo.pointing_sigma_deg", sc.mc.pointing_sigma_deg);
  kv("montecarlo.polarization_min_rad", sc.mc.polarization_angle_rad.lo);
  kv("montecarlo.polarization_max_rad", sc.mc.polarization_angle_rad.hi);
  kv("montecarlo.wire_min_m", sc.mc.wire_length_m.lo);
  kv("montecarlo.wire_max_m", sc.mc.wire_length_m.hi);
  kv("montecarlo.e50_relative_sigma", sc.mc.e50_relative_sigma);
  kv("montecarlo.sigma_e_relative_sigma", sc.mc.sigma_e_relative_sigma);
  kv("montecarlo.sigma_e_floor", sc.mc.sigma_e_floor);
  kv("montecarlo.single_e50", sc.mc.single_sigmoid.e50);
  kv("montecarlo.single_sigma_e", sc.mc.single_sigmoid.sigma_e);
  os << "montecarlo.beamwidth=" << (sc.beamwidth_mode == mc::BeamwidthMode::fixed ? "fixed" : "sampled") << '\n';
  kv("montecarlo.fixed_beamwidth_deg", sc.fixed_beamwidth_deg);
  kv("montecarlo.quality_factor", sc.quality_factor);
  kv("montecarlo.resonance_width_m", sc.resonance_width_m);
  os << "run.seed=" << sc.run.seed << '\n';
  os << "run.trials=" << sc.run.trials << '\n';
  os << "run.variant=" << mc::to_string(sc.run.variant) << '\n';
  os << "run.line_loss=" << (sc.run.line_loss ? to_string(*sc.run.line_loss) : "default") << '\n';
  return os.str();
}

//! FNV-1a 64 of canonical_text, as 16 hex digits.
inline std::string scenario_hash(const Scenario& sc) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_text(sc)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

}  // namespace hpmsim::io
