#include "detectors/lds.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace detectors {

namespace {

Vector stack_y(const Dataset& d, std::size_t j, int depth, Eigen::Index m) {
    Vector col(depth * m);
    for (int i = 0; i < depth; ++i) col.segment(i * m, m) = d.signals[j + std::size_t(i)].y;
    return col;
}

Vector stack_u(const Dataset& d, std::size_t j, int depth, Eigen::Index n) {
    Vector col(depth * n);
    for (int i = 0; i < depth; ++i) col.segment(i * n, n) = d.signals[j + std::size_t(i)].u;
    return col;
}

}  // namespace

LdsModel lds_fit(const Dataset& d, const std::vector<Range>& ranges, int k, int hankel_depth) {
    const Eigen::Index m = d.layout.sensor_count();
    const Eigen::Index n = d.layout.command_width();
    if (k < 1) throw std::invalid_argument("lds_fit: state dimension must be >= 1");
    if (k > (hankel_depth - 1) * m)
        throw std::invalid_argument("lds_fit: k too large for the Hankel depth");

    // second-moment accumulation over all Hankel columns
    const Eigen::Index dm = hankel_depth * m, dn = hankel_depth * n;
    Matrix Syy = Matrix::Zero(dm, dm), Syu = Matrix::Zero(dm, dn), Suu = Matrix::Zero(dn, dn);
    std::size_t cols = 0;
    for (const Range& r : ranges) {
        if (r.len < static_cast<std::size_t>(hankel_depth)) continue;
        for (std::size_t j = r.start; j + static_cast<std::size_t>(hankel_depth) <= r.start + r.len;
             ++j) {
            Vector yc = stack_y(d, j, hankel_depth, m);
            Syy.selfadjointView<Eigen::Lower>().rankUpdate(yc);
            if (n > 0) {
                Vector uc = stack_u(d, j, hankel_depth, n);
                Syu.noalias() += yc * uc.transpose();
                Suu.selfadjointView<Eigen::Lower>().rankUpdate(uc);
            }
            ++cols;
        }
    }
    if (cols < static_cast<std::size_t>(dm + dn))
        throw std::invalid_argument("lds_fit: dataset too short for the Hankel depth");
    Syy = Syy.selfadjointView<Eigen::Lower>();
    Suu = Suu.selfadjointView<Eigen::Lower>();

    // project input effects out: G G^T = Syy - Syu Suu^-1 Syu^T
    Matrix GGt = Syy;
    if (n > 0) {
        Matrix reg = Suu;
        reg.diagonal().array() += 1e-8 * (Suu.trace() / double(dn) + 1.0);
        GGt.noalias() -= Syu * reg.ldlt().solve(Syu.transpose());
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(GGt);
    if (eig.info() != Eigen::Success) throw std::runtime_error("lds_fit: eigensolver failed");
    const Vector& evals = eig.eigenvalues();  // ascending
    const double lead = std::max(evals(dm - 1), 0.0);

    LdsModel model;
    model.k = k;
    int rank = 0;
    while (rank < k) {
        const double v = evals(dm - 1 - rank);
        if (!(v > 0.0 && v > 1e-10 * lead)) break;
        ++rank;
    }
    model.effective_rank = rank;
    model.rank_warning = rank < k;
    if (rank == 0) throw std::runtime_error("lds_fit: output Hankel has rank zero");

    Matrix gamma(dm, rank);
    for (int i = 0; i < rank; ++i)
        gamma.col(i) = eig.eigenvectors().col(dm - 1 - i) * std::sqrt(evals(dm - 1 - i));

    model.C = gamma.topRows(m);
    Matrix up = gamma.topRows(dm - m);
    Matrix down = gamma.bottomRows(dm - m);
    model.A = up.colPivHouseholderQr().solve(down);
    model.C_pinv = Eigen::CompleteOrthogonalDecomposition<Matrix>(model.C).pseudoInverse();

    // B plus one initial state per chunk by least squares on the raw data
    model.B = Matrix::Zero(rank, n);
    if (n > 0) {
        constexpr std::size_t kChunk = 500;
        std::vector<std::pair<std::size_t, std::size_t>> chunks;
        for (const Range& r : ranges)
            for (std::size_t s = r.start; s < r.start + r.len; s += kChunk)
                chunks.push_back({s, std::min(kChunk, r.start + r.len - s)});

        const Eigen::Index nb = rank * n;
        const Eigen::Index dim = static_cast<Eigen::Index>(chunks.size()) * rank + nb;
        Matrix normal = Matrix::Zero(dim, dim);
        Vector rhs = Vector::Zero(dim);
        Matrix reg_row(m, rank + nb);

        for (std::size_t ci = 0; ci < chunks.size(); ++ci) {
            const Eigen::Index w_off = static_cast<Eigen::Index>(ci) * rank;
            const Eigen::Index b_off = static_cast<Eigen::Index>(chunks.size()) * rank;
            std::vector<Eigen::Index> at(static_cast<std::size_t>(rank + nb));
            for (Eigen::Index p = 0; p < rank; ++p) at[std::size_t(p)] = w_off + p;
            for (Eigen::Index p = 0; p < nb; ++p) at[std::size_t(rank + p)] = b_off + p;

            Matrix phi = Matrix::Identity(rank, rank);  // A^(t-t0)
            Matrix X = Matrix::Zero(rank, nb);          // input convolution
            for (std::size_t i = 0; i < chunks[ci].second; ++i) {
                const Signal& sig = d.signals[chunks[ci].first + i];
                reg_row.leftCols(rank).noalias() = model.C * phi;
                reg_row.rightCols(nb).noalias() = model.C * X;
                if (!reg_row.allFinite() || reg_row.cwiseAbs().maxCoeff() > 1e9) break;

                Matrix contrib = reg_row.transpose() * reg_row;
                Vector contrib_rhs = reg_row.transpose() * sig.y;
                for (Eigen::Index p = 0; p < rank + nb; ++p) {
                    rhs(at[std::size_t(p)]) += contrib_rhs(p);
                    for (Eigen::Index q = 0; q < rank + nb; ++q)
                        normal(at[std::size_t(p)], at[std::size_t(q)]) += contrib(p, q);
                }

                // advance: X <- A X + kron(u^T, I), phi <- A phi
                X = model.A * X;
                for (Eigen::Index j = 0; j < n; ++j)
                    X.middleCols(j * rank, rank).diagonal().array() += sig.u(j);
                phi = model.A * phi;
            }
        }
        normal.diagonal().array() += 1e-9;
        Vector sol = normal.ldlt().solve(rhs);
        const Eigen::Index b_off = static_cast<Eigen::Index>(chunks.size()) * rank;
        for (Eigen::Index j = 0; j < n; ++j)
            model.B.col(j) = sol.segment(b_off + j * rank, rank);
    }
    return model;
}

Vector lds_predict(const LdsModel& m, const Vector& y_prev, const Vector& u_prev,
                   const Vector& u_now) {
    (void)u_now;  // D = 0
    if (y_prev.size() != m.C.rows())
        throw std::invalid_argument("lds_predict: sensor dimension mismatch");
    if (u_prev.size() != m.B.cols())
        throw std::invalid_argument("lds_predict: command dimension mismatch");
    Vector w_prev = m.C_pinv * y_prev;
    Vector w = m.A * w_prev + m.B * u_prev;
    return m.C * w;
}

} // namespace detectors
