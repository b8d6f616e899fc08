#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace timeseries {

using Vector = Eigen::VectorXd;

// One time step: m sensor measurements plus n control-command features
// (categorical commands one-hot expanded).
struct Signal {
    std::size_t t = 0;
    Vector y;
    Vector u;
};

// A command feature group; categorical groups occupy `width` adjacent
// one-hot columns of u and are always selected atomically.
struct CommandGroup {
    std::string name;
    bool categorical = false;
    std::vector<std::string> categories;
    Eigen::Index offset = 0;
    Eigen::Index width = 1;
};

struct FeatureLayout {
    std::vector<std::string> sensor_names;
    std::vector<CommandGroup> command_groups;

    Eigen::Index sensor_count() const {
        return static_cast<Eigen::Index>(sensor_names.size());
    }
    Eigen::Index command_width() const {
        Eigen::Index n = 0;
        for (const auto& g : command_groups) n += g.width;
        return n;
    }
    Eigen::Index sensor_index(const std::string& name) const {
        for (std::size_t i = 0; i < sensor_names.size(); ++i)
            if (sensor_names[i] == name) return static_cast<Eigen::Index>(i);
        throw std::invalid_argument("unknown sensor: " + name);
    }
    Eigen::Index command_group_index(const std::string& name) const {
        for (std::size_t i = 0; i < command_groups.size(); ++i)
            if (command_groups[i].name == name) return static_cast<Eigen::Index>(i);
        throw std::invalid_argument("unknown command group: " + name);
    }
};

struct Dataset {
    FeatureLayout layout;
    std::vector<Signal> signals;

    std::size_t size() const { return signals.size(); }
};

inline Vector onehot_encode(const std::string& value, const std::vector<std::string>& categories) {
    for (std::size_t i = 0; i < categories.size(); ++i) {
        if (categories[i] == value) {
            Vector v = Vector::Zero(static_cast<Eigen::Index>(categories.size()));
            v(static_cast<Eigen::Index>(i)) = 1.0;
            return v;
        }
    }
    throw std::invalid_argument("onehot_encode: value '" + value + "' not among categories");
}

// Contiguous temporal split; the first slice gets floor(fraction * N) signals.
inline std::pair<std::size_t, std::size_t> split_sizes(std::size_t n, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("split fraction must lie in (0,1)");
    std::size_t first = static_cast<std::size_t>(fraction * static_cast<double>(n));
    return {first, n - first};
}

inline std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double fraction) {
    auto [a, b] = split_sizes(d.size(), fraction);
    Dataset first{d.layout, {d.signals.begin(), d.signals.begin() + static_cast<long>(a)}};
    Dataset second{d.layout, {d.signals.begin() + static_cast<long>(a), d.signals.end()}};
    return {std::move(first), std::move(second)};
}

} // namespace timeseries
