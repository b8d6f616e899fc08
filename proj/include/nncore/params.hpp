#pragma once

#include <Eigen/Dense>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nncore/rng.hpp"

namespace nncore {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { relu, tanh, sigmoid, identity };

// One named parameter tensor with its gradient buffer and RMSProp accumulator.
struct ParamEntry {
    Matrix value;
    Matrix grad;
    Matrix rms;     // elementwise, nonnegative
    bool touched = false;  // set by backward() when a gradient reached it
};

struct ParamLayout {
    std::string name;
    Eigen::Index rows;
    Eigen::Index cols;  // 1 for vectors
};

class ParamSet {
public:
    ParamEntry& add(const std::string& name, Eigen::Index rows, Eigen::Index cols) {
        auto [it, fresh] = entries_.try_emplace(name);
        if (!fresh) throw std::invalid_argument("duplicate parameter: " + name);
        ParamEntry& e = it->second;
        e.value = Matrix::Zero(rows, cols);
        e.grad = Matrix::Zero(rows, cols);
        e.rms = Matrix::Zero(rows, cols);
        return e;
    }

    ParamEntry& at(const std::string& name) {
        auto it = entries_.find(name);
        if (it == entries_.end()) throw std::invalid_argument("unknown parameter: " + name);
        return it->second;
    }
    const ParamEntry& at(const std::string& name) const {
        auto it = entries_.find(name);
        if (it == entries_.end()) throw std::invalid_argument("unknown parameter: " + name);
        return it->second;
    }

    bool has(const std::string& name) const { return entries_.count(name) != 0; }

    Matrix& value(const std::string& name) { return at(name).value; }
    const Matrix& value(const std::string& name) const { return at(name).value; }

    void zero_grads() {
        for (auto& [name, e] : entries_) {
            e.grad.setZero();
            e.touched = false;
        }
    }

    std::size_t size() const { return entries_.size(); }

    double max_abs_value() const {
        double m = 0.0;
        for (const auto& [name, e] : entries_)
            if (e.value.size() > 0) m = std::max(m, e.value.cwiseAbs().maxCoeff());
        return m;
    }

    std::size_t scalar_count() const {
        std::size_t n = 0;
        for (const auto& [name, e] : entries_) n += static_cast<std::size_t>(e.value.size());
        return n;
    }

    // deterministic (sorted) iteration
    auto begin() { return entries_.begin(); }
    auto end() { return entries_.end(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    std::map<std::string, ParamEntry> entries_;
};

// Uniformly initialized parameters, deterministic per seed. Entries are drawn
// in sorted-name order so the layout order does not matter.
inline ParamSet init_params(const std::vector<ParamLayout>& layout, std::uint64_t seed,
                            double lo = -0.05, double hi = 0.05) {
    ParamSet ps;
    for (const auto& l : layout) ps.add(l.name, l.rows, l.cols);
    Rng rng(seed);
    for (auto& [name, e] : ps)
        for (Eigen::Index c = 0; c < e.value.cols(); ++c)
            for (Eigen::Index r = 0; r < e.value.rows(); ++r)
                e.value(r, c) = rng.uniform(lo, hi);
    return ps;
}

// Clamp every entry into [-c, c]. Idempotent; rejects c <= 0.
inline void clip_params(ParamSet& params, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("clip_params: c must be positive");
    for (auto& [name, e] : params)
        e.value = e.value.cwiseMax(-c).cwiseMin(c);
}

enum class StepDirection { ascend, descend };

// One RMSProp step over every parameter with a populated gradient:
//   a <- rho*a + (1-rho)*g^2 ;  theta <- theta -/+ alpha * g / sqrt(a + eps)
// Gradient buffers are cleared afterwards. Tensors with any nonfinite
// gradient entry are skipped; the skip count is returned.
inline int rmsprop_update(ParamSet& params, double learning_rate, StepDirection dir,
                          double rho = 0.9, double eps = 1e-8) {
    const double sign = (dir == StepDirection::descend) ? -1.0 : 1.0;
    int skipped = 0;
    for (auto& [name, e] : params) {
        if (!e.grad.allFinite()) {
            ++skipped;
            e.grad.setZero();
            e.touched = false;
            continue;
        }
        e.rms = rho * e.rms + (1.0 - rho) * e.grad.cwiseProduct(e.grad);
        e.value += sign * learning_rate *
                   e.grad.cwiseQuotient((e.rms.array() + eps).sqrt().matrix());
        e.grad.setZero();
        e.touched = false;
    }
    return skipped;
}

} // namespace nncore
