#pragma once

// Finite-difference gradient oracle used by the unit and acceptance suites.
// Each case owns a ParamSet plus fixed inputs/targets and can rebuild its
// loss on a tape from the current parameter values, so central differences
// can be taken through the full computation.

#include <functional>
#include <string>
#include <vector>

#include "nncore/layers.hpp"
#include "nncore/params.hpp"
#include "nncore/rng.hpp"
#include "nncore/tape.hpp"

namespace testsupport {

struct GradCheckCase {
    std::string name;
    nncore::ParamSet params;
    std::function<double(nncore::Tape&)> loss;  // forward from current values

    double eval() {
        nncore::Tape tape;
        return loss(tape);
    }
};

inline std::vector<nncore::Vector> random_window(nncore::Rng& rng, int len, Eigen::Index dim) {
    std::vector<nncore::Vector> w;
    for (int i = 0; i < len; ++i) {
        nncore::Vector v(dim);
        for (Eigen::Index j = 0; j < dim; ++j) v(j) = rng.uniform(-1.0, 1.0);
        w.push_back(v);
    }
    return w;
}

// relu -> tanh -> affine chain with squared-error loss
inline GradCheckCase make_dense_case(std::uint64_t seed) {
    using namespace nncore;
    std::vector<ParamLayout> layout = {
        {"W1", 6, 4}, {"b1", 6, 1}, {"W2", 5, 6}, {"b2", 5, 1}, {"W3", 3, 5}, {"b3", 3, 1}};
    GradCheckCase c;
    c.name = "dense";
    c.params = init_params(layout, seed, -0.8, 0.8);
    Rng rng(derive_seed(seed, 17));
    Vector x = random_window(rng, 1, 4)[0];
    Vector target = random_window(rng, 1, 3)[0];
    c.loss = [&params = c.params, x, target](Tape& t) {
        auto affine = [&](const char* W, const char* b, Tape::Var in) {
            return t.add_bias(t.matvec(params.at(W), in), params.at(b));
        };
        Tape::Var h1 = t.relu(affine("W1", "b1", t.input(x)));
        Tape::Var h2 = t.tanh(affine("W2", "b2", h1));
        Tape::Var y = affine("W3", "b3", h2);
        Tape::Var diff = t.sub(y, t.input(target));
        Tape::Var loss = t.dot(diff, diff);
        t.backward(loss);
        return t.scalar(loss);
    };
    return c;
}

// single LSTM encoder over a length-3 window plus affine decode
inline GradCheckCase make_lstm_case(std::uint64_t seed) {
    using namespace nncore;
    LstmSpec spec{"enc", 3, 5};
    std::vector<ParamLayout> layout;
    spec.declare(layout);
    layout.push_back({"dec.W", 2, 5});
    layout.push_back({"dec.b", 2, 1});
    GradCheckCase c;
    c.name = "lstm";
    c.params = init_params(layout, seed, -0.6, 0.6);
    Rng rng(derive_seed(seed, 23));
    auto window = random_window(rng, 3, 3);
    Vector target = random_window(rng, 1, 2)[0];
    c.loss = [&params = c.params, spec, window, target](Tape& t) {
        Tape::Var h = lstm_encode_taped(t, params, spec, window);
        Tape::Var y = t.add_bias(t.matvec(params.at("dec.W"), h), params.at("dec.b"));
        Tape::Var diff = t.sub(y, t.input(target));
        Tape::Var loss = t.dot(diff, diff);
        t.backward(loss);
        return t.scalar(loss);
    };
    return c;
}

// two LSTM encoders merged by an affine combination, then decoded
inline GradCheckCase make_dual_lstm_case(std::uint64_t seed) {
    using namespace nncore;
    LstmSpec real_spec{"enc_real", 3, 4};
    LstmSpec fake_spec{"enc_fake", 3, 4};
    std::vector<ParamLayout> layout;
    real_spec.declare(layout);
    fake_spec.declare(layout);
    layout.push_back({"merge.W1", 5, 4});
    layout.push_back({"merge.W2", 5, 4});
    layout.push_back({"merge.b", 5, 1});
    layout.push_back({"dec.W", 2, 5});
    layout.push_back({"dec.b", 2, 1});
    GradCheckCase c;
    c.name = "dual-lstm";
    c.params = init_params(layout, seed, -0.6, 0.6);
    Rng rng(derive_seed(seed, 29));
    auto window_real = random_window(rng, 3, 3);
    auto window_fake = random_window(rng, 3, 3);
    Vector target = random_window(rng, 1, 2)[0];
    c.loss = [&params = c.params, real_spec, fake_spec, window_real, window_fake,
              target](Tape& t) {
        Tape::Var h1 = lstm_encode_taped(t, params, real_spec, window_real);
        Tape::Var h2 = lstm_encode_taped(t, params, fake_spec, window_fake);
        Tape::Var merged = t.add_bias(t.add(t.matvec(params.at("merge.W1"), h1),
                                            t.matvec(params.at("merge.W2"), h2)),
                                      params.at("merge.b"));
        Tape::Var y = t.add_bias(t.matvec(params.at("dec.W"), merged), params.at("dec.b"));
        Tape::Var diff = t.sub(y, t.input(target));
        Tape::Var loss = t.dot(diff, diff);
        t.backward(loss);
        return t.scalar(loss);
    };
    return c;
}

inline double rel_error(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// max over all parameter entries of the analytic-vs-central-difference error
inline double max_grad_rel_error(GradCheckCase& c, double h = 1e-5) {
    c.params.zero_grads();
    c.eval();  // fills grads via backward inside the loss closure

    std::vector<std::pair<std::string, nncore::Matrix>> analytic;
    for (auto& [name, e] : c.params) analytic.emplace_back(name, e.grad);
    c.params.zero_grads();

    double worst = 0.0;
    for (auto& [name, g] : analytic) {
        nncore::Matrix& v = c.params.value(name);
        for (Eigen::Index col = 0; col < v.cols(); ++col) {
            for (Eigen::Index row = 0; row < v.rows(); ++row) {
                const double saved = v(row, col);
                v(row, col) = saved + h;
                const double lp = c.eval();
                v(row, col) = saved - h;
                const double lm = c.eval();
                v(row, col) = saved;
                c.params.zero_grads();
                worst = std::max(worst, rel_error(g(row, col), (lp - lm) / (2.0 * h)));
            }
        }
    }
    return worst;
}

} // namespace testsupport
