#pragma once

#include <vector>

#include "timeseries/signal.hpp"

namespace timeseries {

struct FeatureRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Min-max ranges observed on the training slice, one per sensor and one per
// continuous command group (categorical groups carry a dummy entry).
struct ScalingSpec {
    std::vector<FeatureRange> sensors;
    std::vector<FeatureRange> commands;  // indexed by command group

    double apply_sensor(Eigen::Index i, double x) const;
    double invert_sensor(Eigen::Index i, double xs) const;
    double sensor_span(Eigen::Index i) const;
};

// (x - lo) / (hi - lo), clamped into [0,1]; a constant feature maps to 0.
double minmax_apply(const FeatureRange& r, double x);
double minmax_invert(const FeatureRange& r, double xs);

// Fits ranges over the first `count` signals (the training slice).
ScalingSpec minmax_fit(const Dataset& d, std::size_t count);

// Returns a copy of the dataset with every continuous feature scaled.
Dataset apply_scaling(const Dataset& d, const ScalingSpec& spec);

} // namespace timeseries
