#pragma once

#include <vector>

#include "timeseries/signal.hpp"

namespace detectors {

using timeseries::Dataset;
using timeseries::Signal;
using timeseries::Vector;
using Matrix = Eigen::MatrixXd;

// Contiguous index range into a dataset's signals.
struct Range {
    std::size_t start = 0;
    std::size_t len = 0;
};

inline std::vector<Range> whole(const Dataset& d) { return {{0, d.size()}}; }

// Per-sensor linear autoregression of order p with intercept.
struct ArModel {
    int p = 0;
    Matrix coef;       // m x p, column j-1 weights y(t-j)
    Vector intercept;  // m
};

// Ordinary least squares per sensor over lagged values; a 1e-8 ridge keeps
// degenerate designs (constant series) solvable.
ArModel ar_fit(const Dataset& d, const std::vector<Range>& ranges, int p);

// recent[0] = y(t-1), recent[1] = y(t-2), ... ; needs at least p entries.
Vector ar_predict(const ArModel& m, const std::vector<Vector>& recent);

} // namespace detectors
