#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>

#include "nncore/rng.hpp"
#include "timeseries/signal.hpp"

namespace timeseries {

// Synthetic pressure-control plant: a pump fills an airtight line against a
// constant leak, a bang-bang controller keeps the pressure inside a deadband
// around the setpoint, and mode/setpoint changes arrive at random.
struct PlantConfig {
    double setpoint = 20.0;
    double deadband = 2.0;
    double pump_rate = 0.6;
    double leak_rate = 0.3;
    double noise_std = 0.15;
    double mode_change_prob = 0.0015;
    double setpoint_change_prob = 0.0008;
    double setpoint_min = 12.0;
    double setpoint_max = 28.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// System modes follow the gas-pipeline coding: automatic regulates the pump,
// manual toggles it at random, off forces it off so it can cool down.
enum class PlantMode { automatic, manual, off };

inline constexpr double kPressureMax = 40.0;

struct PlantState {
    double pressure = 20.0;
    bool pump_on = false;
    PlantMode mode = PlantMode::automatic;
    double setpoint = 20.0;
    std::size_t t = 0;
    nncore::Rng rng;

    explicit PlantState(const PlantConfig& cfg)
        : pressure(cfg.setpoint), setpoint(cfg.setpoint), rng(cfg.seed) {}
};

// Layout of the emitted signals: sensor "pressure"; commands "setpoint"
// (continuous), "mode" (one-hot automatic/manual/off), "pump" (one-hot on/off).
FeatureLayout plant_layout();

// Advances the plant by one step (1 step = 2 seconds of wall time) and emits
// the signal observed at the new time index.
Signal plant_step(PlantState& state, const PlantConfig& config);

Dataset generate_plant(const PlantConfig& config, std::size_t steps);

PlantConfig parse_plant_config(const std::map<std::string, std::string>& kv);
PlantConfig load_plant_config(std::istream& in);

inline constexpr double kStepSeconds = 2.0;

} // namespace timeseries
