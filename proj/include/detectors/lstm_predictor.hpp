#pragma once

#include <span>
#include <vector>

#include "detectors/ar.hpp"
#include "nncore/layers.hpp"
#include "nncore/params.hpp"

namespace detectors {

// LSTM over the last l full signals x = [y; u], decoded by an affine layer
// to the next sensor measurements.
struct LstmPredictor {
    nncore::LstmSpec spec;   // prefix "enc"
    nncore::ParamSet params;
    int window = 10;

    Eigen::Index input_dim() const { return spec.input_dim; }
    Eigen::Index output_dim() const { return params.value("dec.Wy").rows(); }
};

// units defaults to 4x the signal dimension when passed as 0.
LstmPredictor lstm_predictor_init(Eigen::Index signal_dim, Eigen::Index sensor_dim, int window,
                                  int units, std::uint64_t seed);

struct FitStats {
    double final_mse = 0.0;
    std::size_t samples = 0;
    int skipped_updates = 0;
};

// Per-sample RMSProp on the squared one-step prediction error. Aborts with
// diagnostics if the loss goes nonfinite.
FitStats lstm_predictor_fit(LstmPredictor& model, const Dataset& scaled,
                            const std::vector<Range>& ranges, int epochs, double lr);

// window must hold at least l signals; the last l are used.
Vector lstm_predictor_predict(const LstmPredictor& model, std::span<const Signal> window);

} // namespace detectors
