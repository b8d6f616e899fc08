#include "timeseries/window.hpp"

#include <algorithm>
#include <stdexcept>

namespace timeseries {

ChannelMask ChannelMask::full(const FeatureLayout& layout) {
    ChannelMask mask;
    for (Eigen::Index i = 0; i < layout.sensor_count(); ++i) mask.sensor_indices.push_back(i);
    for (std::size_t g = 0; g < layout.command_groups.size(); ++g)
        mask.command_groups.push_back(static_cast<Eigen::Index>(g));
    return mask;
}

void validate_mask(const ChannelMask& mask, const FeatureLayout& layout) {
    auto check = [](std::vector<Eigen::Index> v, Eigen::Index limit, const char* what) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw std::invalid_argument(std::string("mask: duplicate ") + what + " index");
        if (!v.empty() && (v.front() < 0 || v.back() >= limit))
            throw std::invalid_argument(std::string("mask: ") + what + " index out of range");
    };
    check(mask.sensor_indices, layout.sensor_count(), "sensor");
    check(mask.command_groups, static_cast<Eigen::Index>(layout.command_groups.size()),
          "command group");
    if (mask.sensor_indices.empty())
        throw std::invalid_argument("mask: at least one sensor channel is required");
}

Eigen::Index compromised_width(const ChannelMask& mask, const FeatureLayout& layout) {
    Eigen::Index w = static_cast<Eigen::Index>(mask.sensor_indices.size());
    for (Eigen::Index g : mask.command_groups)
        w += layout.command_groups[static_cast<std::size_t>(g)].width;
    return w;
}

Vector project_channels(const Signal& s, const ChannelMask& mask, const FeatureLayout& layout) {
    if (mask.sensor_indices.empty())
        throw std::invalid_argument("project_channels: empty sensor mask");
    Vector xc(compromised_width(mask, layout));
    Eigen::Index k = 0;
    for (Eigen::Index i : mask.sensor_indices) xc(k++) = s.y(i);
    for (Eigen::Index g : mask.command_groups) {
        const CommandGroup& grp = layout.command_groups[static_cast<std::size_t>(g)];
        xc.segment(k, grp.width) = s.u.segment(grp.offset, grp.width);
        k += grp.width;
    }
    return xc;
}

Signal inject_measurements(const Signal& s, const Vector& malicious_y, const ChannelMask& mask) {
    if (malicious_y.size() != static_cast<Eigen::Index>(mask.sensor_indices.size()))
        throw std::invalid_argument("inject_measurements: expected " +
                                    std::to_string(mask.sensor_indices.size()) +
                                    " values, got " + std::to_string(malicious_y.size()));
    Signal out = s;
    Eigen::Index k = 0;
    for (Eigen::Index i : mask.sensor_indices) out.y(i) = malicious_y(k++);
    return out;
}

SlidingWindow::SlidingWindow(std::size_t length) : length_(length) {
    if (length_ == 0) throw std::invalid_argument("SlidingWindow: length must be positive");
}

void SlidingWindow::push(Vector xc, std::size_t t) {
    if (started_ && t != next_t_)
        throw std::invalid_argument("SlidingWindow: non-consecutive time index " +
                                    std::to_string(t) + " (expected " +
                                    std::to_string(next_t_) + ")");
    started_ = true;
    next_t_ = t + 1;
    entries_.push_back(std::move(xc));
    if (entries_.size() > length_) entries_.pop_front();
}

void SlidingWindow::assign_from(const SlidingWindow& other) {
    if (other.length_ != length_)
        throw std::invalid_argument("SlidingWindow: length mismatch on reset");
    if (started_ && other.started_ && other.next_t_ != next_t_)
        throw std::invalid_argument("SlidingWindow: time misalignment on reset");
    entries_ = other.entries_;
    next_t_ = other.next_t_;
    started_ = other.started_;
}

} // namespace timeseries
