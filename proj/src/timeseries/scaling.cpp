#include "timeseries/scaling.hpp"

#include <algorithm>
#include <stdexcept>

namespace timeseries {

double minmax_apply(const FeatureRange& r, double x) {
    if (r.hi <= r.lo) return 0.0;
    return std::clamp((x - r.lo) / (r.hi - r.lo), 0.0, 1.0);
}

double minmax_invert(const FeatureRange& r, double xs) {
    return r.lo + xs * (r.hi - r.lo);
}

double ScalingSpec::apply_sensor(Eigen::Index i, double x) const {
    return minmax_apply(sensors.at(static_cast<std::size_t>(i)), x);
}

double ScalingSpec::invert_sensor(Eigen::Index i, double xs) const {
    return minmax_invert(sensors.at(static_cast<std::size_t>(i)), xs);
}

double ScalingSpec::sensor_span(Eigen::Index i) const {
    const FeatureRange& r = sensors.at(static_cast<std::size_t>(i));
    return r.hi - r.lo;
}

ScalingSpec minmax_fit(const Dataset& d, std::size_t count) {
    if (count == 0 || d.signals.empty())
        throw std::invalid_argument("minmax_fit: needs at least one row");
    count = std::min(count, d.signals.size());

    ScalingSpec spec;
    const Eigen::Index m = d.layout.sensor_count();
    spec.sensors.assign(static_cast<std::size_t>(m),
                        {d.signals[0].y(0), d.signals[0].y(0)});
    for (Eigen::Index i = 0; i < m; ++i)
        spec.sensors[static_cast<std::size_t>(i)] = {d.signals[0].y(i), d.signals[0].y(i)};
    spec.commands.assign(d.layout.command_groups.size(), {0.0, 0.0});
    for (std::size_t g = 0; g < d.layout.command_groups.size(); ++g) {
        if (d.layout.command_groups[g].categorical) continue;
        const double v0 = d.signals[0].u(d.layout.command_groups[g].offset);
        spec.commands[g] = {v0, v0};
    }

    for (std::size_t k = 0; k < count; ++k) {
        const Signal& s = d.signals[k];
        for (Eigen::Index i = 0; i < m; ++i) {
            auto& r = spec.sensors[static_cast<std::size_t>(i)];
            r.lo = std::min(r.lo, s.y(i));
            r.hi = std::max(r.hi, s.y(i));
        }
        for (std::size_t g = 0; g < d.layout.command_groups.size(); ++g) {
            if (d.layout.command_groups[g].categorical) continue;
            const double v = s.u(d.layout.command_groups[g].offset);
            spec.commands[g].lo = std::min(spec.commands[g].lo, v);
            spec.commands[g].hi = std::max(spec.commands[g].hi, v);
        }
    }
    return spec;
}

Dataset apply_scaling(const Dataset& d, const ScalingSpec& spec) {
    Dataset out;
    out.layout = d.layout;
    out.signals.reserve(d.signals.size());
    const Eigen::Index m = d.layout.sensor_count();
    for (const Signal& s : d.signals) {
        Signal scaled = s;
        for (Eigen::Index i = 0; i < m; ++i)
            scaled.y(i) = spec.apply_sensor(i, s.y(i));
        for (std::size_t g = 0; g < d.layout.command_groups.size(); ++g) {
            if (d.layout.command_groups[g].categorical) continue;
            const Eigen::Index off = d.layout.command_groups[g].offset;
            scaled.u(off) = minmax_apply(spec.commands[g], s.u(off));
        }
        out.signals.push_back(std::move(scaled));
    }
    return out;
}

} // namespace timeseries
