#pragma once

#include <deque>
#include <vector>

#include "timeseries/signal.hpp"

namespace timeseries {

// Compromised channels: sensor indices into y plus command groups (one-hot
// groups are selected atomically).
struct ChannelMask {
    std::vector<Eigen::Index> sensor_indices;
    std::vector<Eigen::Index> command_groups;

    static ChannelMask full(const FeatureLayout& layout);
};

void validate_mask(const ChannelMask& mask, const FeatureLayout& layout);

// Width of the compromised sub-signal: k1 sensors plus the expanded width of
// the selected command groups.
Eigen::Index compromised_width(const ChannelMask& mask, const FeatureLayout& layout);

// Projects a signal onto the compromised channels, sensors first, preserving
// index order. Requires at least one masked sensor.
Vector project_channels(const Signal& s, const ChannelMask& mask, const FeatureLayout& layout);

// Replaces the masked sensor entries of `s` by the given malicious values;
// everything else is untouched.
Signal inject_measurements(const Signal& s, const Vector& malicious_y, const ChannelMask& mask);

// Ordered last-l sub-signals with strictly consecutive time indices.
class SlidingWindow {
public:
    explicit SlidingWindow(std::size_t length);

    void push(Vector xc, std::size_t t);
    bool warm() const { return entries_.size() == length_; }
    std::size_t length() const { return length_; }
    std::size_t next_time() const { return next_t_; }

    const std::deque<Vector>& entries() const { return entries_; }

    // Full resynchronization (the S~ <- S reset); both windows must cover the
    // same time span.
    void assign_from(const SlidingWindow& other);

private:
    std::size_t length_;
    std::size_t next_t_ = 0;
    bool started_ = false;
    std::deque<Vector> entries_;
};

} // namespace timeseries
