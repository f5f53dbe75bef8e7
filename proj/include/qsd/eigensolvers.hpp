// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file eigensolvers.hpp
 * @brief Lowest eigenpair of real symmetric operators.
 *
 * Two routes:
 *  - dense_lowest_eigenpair: full tridiagonal-QR factorization (Eigen).
 *  - davidson_lowest_eigenpair: Rayleigh-Ritz on a growing search space,
 *    expanded with diagonally preconditioned residuals, thick restart.
 *
 * Both return eigenvectors with the largest-magnitude component >= 0.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qsd {

/// Raised by callers that treat non-convergence as fatal.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SymmetricOperator {
public:
    using MatVec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

    explicit SymmetricOperator(Eigen::MatrixXd dense)
        : dim_(static_cast<std::size_t>(dense.rows())), dense_(std::move(dense)) {
        if (dense_->rows() != dense_->cols()) throw std::invalid_argument("operator must be square");
        diag_ = dense_->diagonal();
    }

    SymmetricOperator(std::size_t dim, MatVec apply, Eigen::VectorXd diagonal)
        : dim_(dim), apply_(std::move(apply)), diag_(std::move(diagonal)) {
        if (static_cast<std::size_t>(diag_.size()) != dim_)
            throw std::invalid_argument("diagonal length must equal dim");
    }

    std::size_t dim() const noexcept { return dim_; }
    bool is_dense() const noexcept { return dense_.has_value(); }
    const Eigen::MatrixXd& dense() const { return dense_.value(); }
    const Eigen::VectorXd& diagonal() const noexcept { return diag_; }

    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        if (dense_) {
            y.noalias() = (*dense_) * x;
        } else {
            y.resize(static_cast<Eigen::Index>(dim_));
            apply_(x, y);
        }
    }

    Eigen::VectorXd operator*(const Eigen::VectorXd& x) const {
        Eigen::VectorXd y(static_cast<Eigen::Index>(dim_));
        apply(x, y);
        return y;
    }

    /// Materialize the operator column by column (for testing / small dims).
    Eigen::MatrixXd to_dense() const {
        if (dense_) return *dense_;
        const auto n = static_cast<Eigen::Index>(dim_);
        Eigen::MatrixXd m(n, n);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n), col(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            e[j] = 1.0;
            apply(e, col);
            m.col(j) = col;
            e[j] = 0.0;
        }
        return m;
    }

private:
    std::size_t dim_;
    std::optional<Eigen::MatrixXd> dense_;
    MatVec apply_;
    Eigen::VectorXd diag_;
};

struct Eigenpair {
    double value = 0.0;
    Eigen::VectorXd vector;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
};

struct DavidsonOptions {
    double tol = 1e-9;
    int max_iter = 500;
    int max_subspace = 24;
    int restart_size = 4;
    double precond_floor = 1e-8;
};

inline constexpr std::size_t kDenseLimit = 8192;
inline constexpr std::size_t kDenseCrossover = 512;

namespace detail {

inline void fix_sign(Eigen::VectorXd& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v.size() > 0 && v[imax] < 0) v = -v;
}

}  // namespace detail

inline Eigenpair dense_lowest_eigenpair(const Eigen::MatrixXd& m, std::size_t limit = kDenseLimit) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    if (m.rows() == 0) throw std::invalid_argument("empty matrix");
    if (static_cast<std::size_t>(m.rows()) > limit)
        throw std::invalid_argument("dimension exceeds dense eigensolver limit");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed");
    Eigenpair out;
    out.value = es.eigenvalues()[0];
    out.vector = es.eigenvectors().col(0);
    detail::fix_sign(out.vector);
    out.iterations = 1;
    out.converged = true;
    out.residual = (m * out.vector - out.value * out.vector).norm();
    return out;
}

inline Eigenpair dense_lowest_eigenpair(const SymmetricOperator& op, std::size_t limit = kDenseLimit) {
    if (op.dim() > limit) throw std::invalid_argument("dimension exceeds dense eigensolver limit");
    return op.is_dense() ? dense_lowest_eigenpair(op.dense(), limit)
                         : dense_lowest_eigenpair(op.to_dense(), limit);
}

/**
 * Davidson iteration for the lowest eigenpair.
 *
 * `guess` need not be normalized; a zero guess is replaced by the unit
 * vector on the smallest diagonal element.  Non-convergence is reported
 * through `converged`, never thrown.  A guess inside an invariant subspace
 * (a decoupled block) converges to that block's lowest eigenpair.
 */
inline Eigenpair davidson_lowest_eigenpair(const SymmetricOperator& op, Eigen::VectorXd guess,
                                           const DavidsonOptions& opt = {}) {
    const auto n = static_cast<Eigen::Index>(op.dim());
    if (n == 0) throw std::invalid_argument("empty operator");
    if (guess.size() != n) throw std::invalid_argument("guess length must equal dim");
    const Eigen::VectorXd& diag = op.diagonal();

    if (guess.norm() == 0.0) {
        Eigen::Index i0 = 0;
        diag.minCoeff(&i0);
        guess = Eigen::VectorXd::Unit(n, i0);
    }
    guess.normalize();

    const Eigen::Index cap = std::min<Eigen::Index>(std::max(opt.max_subspace, 2), n);
    const Eigen::Index keep = std::clamp<Eigen::Index>(opt.restart_size, 1, cap - 1 > 0 ? cap - 1 : 1);

    Eigen::MatrixXd V(n, cap), AV(n, cap);
    Eigen::Index k = 0;
    auto append = [&](Eigen::VectorXd t) -> bool {
        // Two passes of classical Gram-Schmidt.
        for (int pass = 0; pass < 2; ++pass) {
            if (k > 0) t -= V.leftCols(k) * (V.leftCols(k).transpose() * t);
        }
        const double nrm = t.norm();
        if (nrm < 1e-12) return false;
        V.col(k) = t / nrm;
        Eigen::VectorXd av(n);
        op.apply(V.col(k), av);
        AV.col(k) = av;
        ++k;
        return true;
    };
    append(guess);

    Eigenpair best;
    best.value = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x(n), ax(n), r(n);
    for (int it = 1; it <= opt.max_iter; ++it) {
        const Eigen::MatrixXd T = V.leftCols(k).transpose() * AV.leftCols(k);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
        const double theta = es.eigenvalues()[0];
        const Eigen::VectorXd s = es.eigenvectors().col(0);
        x.noalias() = V.leftCols(k) * s;
        ax.noalias() = AV.leftCols(k) * s;
        r = ax - theta * x;
        const double rnorm = r.norm();

        best.value = theta;
        best.vector = x;
        best.iterations = it;
        best.residual = rnorm;
        if (rnorm < opt.tol) {
            best.converged = true;
            break;
        }

        if (k == cap) {
            // Thick restart on the lowest Ritz vectors.
            const Eigen::Index m = std::min(keep, k);
            const Eigen::MatrixXd S = es.eigenvectors().leftCols(m);
            Eigen::MatrixXd Vn = V.leftCols(k) * S;
            Eigen::MatrixXd AVn = AV.leftCols(k) * S;
            V.leftCols(m) = Vn;
            AV.leftCols(m) = AVn;
            k = m;
        }

        Eigen::VectorXd t(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            double den = diag[i] - theta;
            if (std::abs(den) < opt.precond_floor) den = std::copysign(opt.precond_floor, den);
            t[i] = r[i] / den;
        }
        if (!append(std::move(t)) && !append(r)) {
            // Search space cannot grow; the residual test above already failed.
            break;
        }
    }
    best.vector.normalize();
    detail::fix_sign(best.vector);
    return best;
}

/// Dense route up to the crossover dimension, Davidson above it.
inline Eigenpair lowest_eigenpair(const SymmetricOperator& op, const Eigen::VectorXd& guess,
                                  const DavidsonOptions& opt = {}) {
    if (op.dim() <= kDenseCrossover) return dense_lowest_eigenpair(op);
    return davidson_lowest_eigenpair(op, guess, opt);
}

}  // namespace qsd
