#include "detectors/ar.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace detectors {

ArModel ar_fit(const Dataset& d, const std::vector<Range>& ranges, int p) {
    if (p < 1) throw std::invalid_argument("ar_fit: order must be >= 1");
    std::size_t rows = 0;
    for (const Range& r : ranges)
        if (r.len > static_cast<std::size_t>(p)) rows += r.len - static_cast<std::size_t>(p);
    if (rows < 2)
        throw std::invalid_argument("ar_fit: series too short for order " + std::to_string(p));

    const Eigen::Index m = d.layout.sensor_count();
    ArModel model;
    model.p = p;
    model.coef.resize(m, p);
    model.intercept.resize(m);

    Matrix X(static_cast<Eigen::Index>(rows), p + 1);
    Vector y(static_cast<Eigen::Index>(rows));
    for (Eigen::Index s = 0; s < m; ++s) {
        Eigen::Index row = 0;
        for (const Range& r : ranges) {
            for (std::size_t t = r.start + static_cast<std::size_t>(p); t < r.start + r.len; ++t) {
                y(row) = d.signals[t].y(s);
                X(row, 0) = 1.0;
                for (int j = 1; j <= p; ++j)
                    X(row, j) = d.signals[t - static_cast<std::size_t>(j)].y(s);
                ++row;
            }
        }
        Matrix gram = X.transpose() * X;
        gram.diagonal().array() += 1e-8;
        Vector beta = gram.ldlt().solve(X.transpose() * y);
        model.intercept(s) = beta(0);
        model.coef.row(s) = beta.tail(p).transpose();
    }
    return model;
}

Vector ar_predict(const ArModel& m, const std::vector<Vector>& recent) {
    if (recent.size() < static_cast<std::size_t>(m.p))
        throw std::invalid_argument("ar_predict: need " + std::to_string(m.p) +
                                    " history values, got " + std::to_string(recent.size()));
    Vector yhat = m.intercept;
    for (int j = 1; j <= m.p; ++j)
        yhat += m.coef.col(j - 1).cwiseProduct(recent[static_cast<std::size_t>(j - 1)]);
    return yhat;
}

} // namespace detectors
