// Distance to a convex hull via Wolfe's minimum-norm-point algorithm.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "steiner/errors.hpp"
#include "steiner/geometry.hpp"

namespace steiner {

namespace {

// Affine minimizer of |sum a_i P_i| subject to sum a_i = 1 over the active columns.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& active) {
    const Eigen::Index k = active.cols();
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = active.transpose() * active;
    kkt.block(0, k, k, 1).setOnes();
    kkt.block(k, 0, 1, k).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs(k) = 1.0;
    const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    return sol.head(k);
}

}  // namespace

double hull_distance(std::span<const Point> points, const Point& q) {
    if (points.empty()) throw PreconditionError("convex hull of an empty set");
    const std::size_t d = q.dim();
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd P(static_cast<Eigen::Index>(d), n);
    double scale = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Point& p = points[static_cast<std::size_t>(j)];
        if (p.dim() != d) throw PreconditionError("dimension mismatch in hull points");
        for (std::size_t i = 0; i < d; ++i) P(static_cast<Eigen::Index>(i), j) = p[i] - q[i];
        scale = std::max(scale, P.col(j).norm());
    }
    if (scale == 0.0) return 0.0;
    const double eps = 1e-13 * scale * scale;

    Eigen::Index start = 0;
    P.colwise().squaredNorm().minCoeff(&start);
    std::vector<Eigen::Index> active{start};
    std::vector<double> lambda{1.0};
    Eigen::VectorXd x = P.col(start);

    for (int major = 0; major < 1000; ++major) {
        if (x.squaredNorm() <= eps) return 0.0;
        Eigen::Index j = 0;
        const double best = (x.transpose() * P).minCoeff(&j);
        if (best >= x.squaredNorm() - eps) break;
        if (std::find(active.begin(), active.end(), j) != active.end()) break;
        active.push_back(j);
        lambda.push_back(0.0);

        for (int minor = 0; minor < 1000; ++minor) {
            Eigen::MatrixXd cols(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(active.size()));
            for (std::size_t k = 0; k < active.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = P.col(active[k]);
            const Eigen::VectorXd alpha = affine_minimizer(cols);
            if ((alpha.array() > 1e-14).all()) {
                for (std::size_t k = 0; k < active.size(); ++k) lambda[k] = alpha(static_cast<Eigen::Index>(k));
                x = cols * alpha;
                break;
            }
            double theta = 1.0;
            for (std::size_t k = 0; k < active.size(); ++k) {
                const double a = alpha(static_cast<Eigen::Index>(k));
                if (a <= 1e-14) theta = std::min(theta, lambda[k] / (lambda[k] - a));
            }
            for (std::size_t k = 0; k < active.size(); ++k) {
                lambda[k] = theta * alpha(static_cast<Eigen::Index>(k)) + (1.0 - theta) * lambda[k];
            }
            std::vector<Eigen::Index> kept;
            std::vector<double> kept_lambda;
            for (std::size_t k = 0; k < active.size(); ++k) {
                if (lambda[k] > 1e-14) {
                    kept.push_back(active[k]);
                    kept_lambda.push_back(lambda[k]);
                }
            }
            active = std::move(kept);
            lambda = std::move(kept_lambda);
            double total = 0.0;
            for (double l : lambda) total += l;
            x.setZero(static_cast<Eigen::Index>(d));
            for (std::size_t k = 0; k < active.size(); ++k) {
                lambda[k] /= total;
                x += lambda[k] * P.col(active[k]);
            }
        }
    }
    return x.norm();
}

bool convex_hull_contains(std::span<const Point> points, const Point& q) {
    return hull_distance(points, q) <= kTolGeom;
}

}  // namespace steiner
