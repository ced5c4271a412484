// Prints 90% and 50% kill ranges for a few transmitter/dish pairs.

#include <cstdio>

#include "hpmsim/damage.hpp"

int main() {
  using namespace hpmsim;
  const auto drone = damage::DroneModel::baseline();
  std::printf("%10s %8s %10s %10s\n", "power_kW", "dish_m", "r90_m", "r50_m");
  for (double kw : {10.0, 25.0, 50.0, 100.0}) {
    for (double d : {0.6, 1.0}) {
      SystemConfig c;
      c.transmit_power_w = kw * 1e3;
      c.dish_diameter_m = d;
      const auto r90 = damage::kill_range(c, drone, 0.9, LineLoss::excluded);
      const auto r50 = damage::kill_range(c, drone, 0.5, LineLoss::excluded);
      std::printf("%10.0f %8.2f %10.2f %10.2f\n", kw, d, r90.range_m, r50.range_m);
    }
  }
}
