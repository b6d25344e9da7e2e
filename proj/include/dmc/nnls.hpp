#pragma once

// Nonnegative least squares, min_{x >= 0} |A x - b|^2, by the Lawson-Hanson
// active-set method.  Passive-set subproblems are solved with a
// column-pivoted Householder QR.

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "dmc/core.hpp"

namespace dmc {

struct NnlsResult {
    Eigen::VectorXd x;
    double residual_norm = 0.0;
    /// max_j |pg_j| with pg_j = g_j if x_j > 0 and min(g_j, 0) otherwise,
    /// where g = A^T (A x - b) is the gradient of (1/2)|Ax - b|^2.
    double projected_gradient = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

inline double projected_gradient_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& x)
{
    const Eigen::VectorXd g = a.transpose() * (a * x - b);
    double m = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double pg = x(j) > 0.0 ? g(j) : std::min(g(j), 0.0);
        m = std::max(m, std::abs(pg));
    }
    return m;
}

inline NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol = 1e-10,
                       std::size_t max_iter = 0)
{
    if (a.rows() != b.size()) throw DimensionError("nnls: rows of A must match size of b");
    const Eigen::Index n = a.cols();
    if (max_iter == 0) max_iter = 5 * static_cast<std::size_t>(n) + 10;

    NnlsResult res;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    std::vector<bool> blocked(static_cast<std::size_t>(n), false);
    Eigen::VectorXd w = a.transpose() * (b - a * x);

    auto solve_passive = [&](const std::vector<Eigen::Index>& idx) {
        Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
        const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);
        Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
        for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(static_cast<Eigen::Index>(k));
        return z;
    };

    while (res.iterations < max_iter) {
        Eigen::Index t = -1;
        double best = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            if (!passive[uj] && !blocked[uj] && w(j) > best) {
                best = w(j);
                t = j;
            }
        }
        if (t < 0) break;
        ++res.iterations;
        passive[static_cast<std::size_t>(t)] = true;

        bool first = true;
        while (true) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
            const Eigen::VectorXd z = solve_passive(idx);
            bool feasible = true;
            for (Eigen::Index j : idx) feasible = feasible && z(j) > 0.0;
            if (feasible) {
                x = z;
                break;
            }
            if (first && z(t) <= 0.0) {
                // rounding made the entering column useless; park it
                passive[static_cast<std::size_t>(t)] = false;
                blocked[static_cast<std::size_t>(t)] = true;
                break;
            }
            first = false;
            double step = 1.0;
            for (Eigen::Index j : idx)
                if (z(j) <= 0.0) step = std::min(step, x(j) / (x(j) - z(j)));
            x += step * (z - x);
            for (Eigen::Index j : idx) {
                if (x(j) <= 1e-15) {
                    x(j) = 0.0;
                    passive[static_cast<std::size_t>(j)] = false;
                }
            }
            if (std::none_of(passive.begin(), passive.end(), [](bool p) { return p; })) break;
        }
        w = a.transpose() * (b - a * x);
        std::fill(blocked.begin(), blocked.end(), false);
        blocked[static_cast<std::size_t>(t)] = !passive[static_cast<std::size_t>(t)];
    }

    res.x = x;
    res.residual_norm = (a * x - b).norm();
    res.projected_gradient = projected_gradient_norm(a, b, x);
    res.converged = res.projected_gradient <= tol;
    return res;
}

}  // namespace dmc
