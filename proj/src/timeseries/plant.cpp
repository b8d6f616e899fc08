#include "timeseries/plant.hpp"

#include <algorithm>
#include <stdexcept>

namespace timeseries {

namespace {
constexpr double kManualToggleProb = 0.02;
}

void PlantConfig::validate() const {
    if (!(pump_rate > 0.0) || !(leak_rate > 0.0))
        throw std::invalid_argument("plant: pump_rate and leak_rate must be positive");
    if (noise_std < 0.0) throw std::invalid_argument("plant: noise_std must be >= 0");
    if (!(deadband > 0.0)) throw std::invalid_argument("plant: deadband must be positive");
    if (setpoint_min > setpoint_max)
        throw std::invalid_argument("plant: setpoint range is empty");
}

FeatureLayout plant_layout() {
    FeatureLayout layout;
    layout.sensor_names = {"pressure"};
    CommandGroup setpoint{"setpoint", false, {}, 0, 1};
    CommandGroup mode{"mode", true, {"automatic", "manual", "off"}, 1, 3};
    CommandGroup pump{"pump", true, {"on", "off"}, 4, 2};
    layout.command_groups = {setpoint, mode, pump};
    return layout;
}

Signal plant_step(PlantState& state, const PlantConfig& config) {
    // occasional supervisory changes
    if (state.rng.uniform01() < config.mode_change_prob) {
        switch (state.rng.index(3)) {
            case 0: state.mode = PlantMode::automatic; break;
            case 1: state.mode = PlantMode::manual; break;
            default: state.mode = PlantMode::off; break;
        }
    }
    if (state.rng.uniform01() < config.setpoint_change_prob)
        state.setpoint = state.rng.uniform(config.setpoint_min, config.setpoint_max);

    // pump control from the current measurement
    switch (state.mode) {
        case PlantMode::off:
            state.pump_on = false;
            break;
        case PlantMode::manual:
            if (state.rng.uniform01() < kManualToggleProb) state.pump_on = !state.pump_on;
            break;
        case PlantMode::automatic:
            if (state.pressure < state.setpoint - config.deadband) state.pump_on = true;
            else if (state.pressure > state.setpoint + config.deadband) state.pump_on = false;
            break;
    }

    double delta = (state.pump_on ? config.pump_rate : 0.0) - config.leak_rate;
    delta += state.rng.gaussian(0.0, config.noise_std);
    state.pressure = std::clamp(state.pressure + delta, 0.0, kPressureMax);

    Signal sig;
    sig.t = state.t++;
    sig.y = Vector::Constant(1, state.pressure);
    sig.u.resize(6);
    sig.u(0) = state.setpoint;
    sig.u.segment(1, 3).setZero();
    sig.u(1 + static_cast<Eigen::Index>(state.mode)) = 1.0;
    sig.u(4) = state.pump_on ? 1.0 : 0.0;
    sig.u(5) = state.pump_on ? 0.0 : 1.0;
    return sig;
}

Dataset generate_plant(const PlantConfig& config, std::size_t steps) {
    config.validate();
    Dataset ds;
    ds.layout = plant_layout();
    ds.signals.reserve(steps);
    PlantState state(config);
    for (std::size_t i = 0; i < steps; ++i) ds.signals.push_back(plant_step(state, config));
    return ds;
}

PlantConfig parse_plant_config(const std::map<std::string, std::string>& kv) {
    PlantConfig cfg;
    auto get = [&](const char* key, double& out) {
        auto it = kv.find(key);
        if (it != kv.end()) out = std::stod(it->second);
    };
    get("setpoint", cfg.setpoint);
    get("deadband", cfg.deadband);
    get("pump_rate", cfg.pump_rate);
    get("leak_rate", cfg.leak_rate);
    get("noise_std", cfg.noise_std);
    get("mode_change_prob", cfg.mode_change_prob);
    get("setpoint_change_prob", cfg.setpoint_change_prob);
    get("setpoint_min", cfg.setpoint_min);
    get("setpoint_max", cfg.setpoint_max);
    if (auto it = kv.find("seed"); it != kv.end())
        cfg.seed = static_cast<std::uint64_t>(std::stoull(it->second));
    cfg.validate();
    return cfg;
}

PlantConfig load_plant_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("plant config: expected key=value, got: " + line);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return parse_plant_config(kv);
}

} // namespace timeseries
