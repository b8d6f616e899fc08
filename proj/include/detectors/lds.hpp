#pragma once

#include <vector>

#include "detectors/ar.hpp"

namespace detectors {

// Linear dynamic state-space model y = C w, w' = A w + B u (D fixed to zero).
// Identified subspace-style: the input contribution is projected out of a
// depth-2l block-Hankel of the outputs, the observability matrix comes from a
// rank-k factorization of what remains, A and C from its shift structure, and
// B (with per-chunk initial states) from one more linear least squares.
struct LdsModel {
    Matrix A, B, C;
    Matrix C_pinv;
    int k = 0;
    int effective_rank = 0;
    bool rank_warning = false;

    Eigen::Index state_dim() const { return A.rows(); }
};

LdsModel lds_fit(const Dataset& d, const std::vector<Range>& ranges, int k,
                 int hankel_depth = 20);

// One-step prediction with the state re-anchored from the latest observation
// through the pseudo-inverse of C. u_now is unused because D = 0.
Vector lds_predict(const LdsModel& m, const Vector& y_prev, const Vector& u_prev,
                   const Vector& u_now);

} // namespace detectors
