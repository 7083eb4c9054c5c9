#include "torsionforge/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace torsionforge::linalg {

Complex determinant(const Mat& a) {
    if (a.rows() != a.cols()) throw InvalidInputError("determinant: matrix not square");
    if (a.rows() == 0) return {1.0, 0.0};
    return Eigen::PartialPivLU<Mat>(a).determinant();
}

int rank(const Mat& a, double rtol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    qr.setThreshold(rtol);
    return static_cast<int>(qr.rank());
}

Vec solve(const Mat& a, const Vec& b) {
    if (a.cols() == 0) return Vec::Zero(0);
    if (a.rows() == 0) return Vec::Zero(a.cols());
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    return qr.solve(b);
}

Mat kernel(const Mat& a, double rtol) {
    if (a.cols() == 0) return Mat::Zero(0, 0);
    if (a.rows() == 0) return Mat::Identity(a.cols(), a.cols());
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thresh = rtol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++r;
    return svd.matrixV().rightCols(a.cols() - r);
}

std::vector<int> pivot_columns(const Mat& a, double rtol,
                               const std::vector<int>* candidate_order) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    std::vector<int> order(n);
    if (candidate_order) {
        order = *candidate_order;
        if (static_cast<int>(order.size()) != n)
            throw InvalidInputError("pivot_columns: candidate order size mismatch");
    } else {
        for (int i = 0; i < n; ++i) order[i] = i;
    }

    Mat work = a;  // residuals after projecting out the chosen columns
    std::vector<bool> used(n, false);
    std::vector<int> pivots;
    double scale = 0.0;
    for (int c = 0; c < n; ++c) scale = std::max(scale, work.col(c).norm());
    const double thresh = rtol * std::max(1.0, scale);

    for (int step = 0; step < std::min(m, n); ++step) {
        double best = 0.0;
        for (int c = 0; c < n; ++c)
            if (!used[c]) best = std::max(best, work.col(c).norm());
        if (best <= thresh) break;
        int pick = -1;
        for (int idx : order) {
            if (used[idx]) continue;
            if (work.col(idx).norm() >= 0.5 * best) { pick = idx; break; }
        }
        used[pick] = true;
        pivots.push_back(pick);
        Vec q = work.col(pick) / work.col(pick).norm();
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            work.col(c) -= q * (q.adjoint() * work.col(c));
            work.col(c) -= q * (q.adjoint() * work.col(c));  // re-orthogonalize
        }
    }
    std::sort(pivots.begin(), pivots.end());
    return pivots;
}

}  // namespace torsionforge::linalg
