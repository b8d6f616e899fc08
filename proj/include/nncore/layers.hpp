#pragma once

#include <stdexcept>
#include <string>

#include "nncore/params.hpp"
#include "nncore/tape.hpp"

namespace nncore {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline Vector apply_activation(Vector z, Activation act) {
    switch (act) {
        case Activation::relu: return z.cwiseMax(0.0);
        case Activation::tanh: return z.array().tanh().matrix();
        case Activation::sigmoid: return z.unaryExpr([](double v) { return sigmoid(v); });
        case Activation::identity: return z;
    }
    throw std::logic_error("unreachable activation");
}

// f(W x + b)
inline Vector dense_forward(const Matrix& W, const Vector& b, const Vector& x, Activation act) {
    if (W.cols() != x.size() || W.rows() != b.size())
        throw std::invalid_argument("dense_forward: shape mismatch, W is " +
                                    std::to_string(W.rows()) + "x" + std::to_string(W.cols()) +
                                    ", x has " + std::to_string(x.size()) + " entries, b has " +
                                    std::to_string(b.size()));
    return apply_activation(W * x + b, act);
}

struct LstmState {
    Vector hidden;  // h
    Vector cell;    // s

    static LstmState zeros(Eigen::Index units) {
        return LstmState{Vector::Zero(units), Vector::Zero(units)};
    }
};

// Names the twelve tensors of one LSTM cell under a common prefix:
// three sigmoid gates (f: forget, g: input, q: output) and the cell candidate.
struct LstmSpec {
    std::string prefix;
    Eigen::Index input_dim;
    Eigen::Index units;

    void declare(std::vector<ParamLayout>& layout) const {
        for (const char* g : {"f", "g", "q", "c"}) {
            layout.push_back({prefix + ".U" + g, units, input_dim});
            layout.push_back({prefix + ".W" + g, units, units});
            layout.push_back({prefix + ".b" + g, units, 1});
        }
    }
};

// One cell update:
//   f = sig(bf + Uf x + Wf h),  g = sig(bg + Ug x + Wg h),  q = sig(bq + Uq x + Wq h)
//   s' = f .* s + g .* tanh(bc + Uc x + Wc h)
//   h' = tanh(s') .* q
inline LstmState lstm_step(const ParamSet& params, const LstmSpec& spec, const Vector& x,
                           const LstmState& prev) {
    if (x.size() != spec.input_dim || prev.hidden.size() != spec.units ||
        prev.cell.size() != spec.units)
        throw std::invalid_argument("lstm_step: shape mismatch for " + spec.prefix +
                                    " (input " + std::to_string(x.size()) + ", hidden " +
                                    std::to_string(prev.hidden.size()) + ")");
    auto gate = [&](const char* g) {
        return params.value(spec.prefix + ".U" + g) * x +
               params.value(spec.prefix + ".W" + g) * prev.hidden +
               params.value(spec.prefix + ".b" + g).col(0);
    };
    const Vector f = apply_activation(gate("f"), Activation::sigmoid);
    const Vector g = apply_activation(gate("g"), Activation::sigmoid);
    const Vector q = apply_activation(gate("q"), Activation::sigmoid);
    const Vector cand = apply_activation(gate("c"), Activation::tanh);
    LstmState next;
    next.cell = f.cwiseProduct(prev.cell) + g.cwiseProduct(cand);
    next.hidden = next.cell.array().tanh().matrix().cwiseProduct(q);
    return next;
}

// Runs the cell over an ordered window of inputs starting from the zero state
// and returns the final hidden vector. Empty windows are a caller bug.
template <typename Range>
Vector lstm_encode(const ParamSet& params, const LstmSpec& spec, const Range& window) {
    LstmState st = LstmState::zeros(spec.units);
    std::size_t n = 0;
    for (const Vector& x : window) {
        st = lstm_step(params, spec, x, st);
        ++n;
    }
    if (n == 0) throw std::invalid_argument("lstm_encode: empty window for " + spec.prefix);
    return st.hidden;
}

struct TapedLstmState {
    Tape::Var hidden;
    Tape::Var cell;
};

inline TapedLstmState lstm_step_taped(Tape& tape, ParamSet& params, const LstmSpec& spec,
                                      Tape::Var x, const TapedLstmState& prev) {
    auto gate = [&](const char* g) {
        Tape::Var z = tape.add(tape.matvec(params.at(spec.prefix + ".U" + g), x),
                               tape.matvec(params.at(spec.prefix + ".W" + g), prev.hidden));
        return tape.add_bias(z, params.at(spec.prefix + ".b" + g));
    };
    Tape::Var f = tape.sigmoid(gate("f"));
    Tape::Var g = tape.sigmoid(gate("g"));
    Tape::Var q = tape.sigmoid(gate("q"));
    Tape::Var cand = tape.tanh(gate("c"));
    Tape::Var cell = tape.add(tape.hadamard(f, prev.cell), tape.hadamard(g, cand));
    Tape::Var hidden = tape.hadamard(tape.tanh(cell), q);
    return {hidden, cell};
}

// Encodes a window starting from the zero state; returns the final hidden var.
template <typename Range>
Tape::Var lstm_encode_taped(Tape& tape, ParamSet& params, const LstmSpec& spec,
                            const Range& window) {
    TapedLstmState st{tape.input(Vector::Zero(spec.units)), tape.input(Vector::Zero(spec.units))};
    std::size_t n = 0;
    for (const Vector& x : window) {
        st = lstm_step_taped(tape, params, spec, tape.input(x), st);
        ++n;
    }
    if (n == 0) throw std::invalid_argument("lstm_encode_taped: empty window for " + spec.prefix);
    return st.hidden;
}

} // namespace nncore
