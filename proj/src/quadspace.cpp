#include "pseudohyp/quadspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pseudohyp {

QuadraticSpace make_space(const Mat& gram) {
    if (gram.rows() != gram.cols() || gram.rows() == 0)
        throw std::invalid_argument("gram must be a non-empty square matrix");
    if (std::abs(gram.determinant()) <= 1e-12)
        throw degenerate_error("degenerate quadratic form");
    Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
    QuadraticSpace s;
    s.dim = static_cast<int>(gram.rows());
    s.gram = gram;
    for (int i = 0; i < s.dim; ++i) (es.eigenvalues()(i) > 0 ? s.p : s.q)++;
    return s;
}

QuadraticSpace standard_space(int n) {
    if (n < 2) throw std::invalid_argument("standard_space: n must be >= 2");
    Vec d = -Vec::Ones(n + 3);
    d(0) = d(1) = 1.0;
    return make_space(d.asDiagonal());
}

QuadraticSpace b2_space() {
    Mat g = Mat::Zero(3, 3);
    g(1, 1) = 0.5;
    g(0, 2) = g(2, 0) = -1.0;
    return make_space(g);
}

QuadraticSpace b4_space() {
    Mat g = Mat::Zero(5, 5);
    g(2, 2) = -1.0 / 6.0;
    g(0, 4) = g(4, 0) = -1.0;
    g(1, 3) = g(3, 1) = 0.25;
    return make_space(g);
}

double inner(const QuadraticSpace& space, const Vec& x, const Vec& y) {
    if (x.size() != space.dim || y.size() != space.dim)
        throw std::invalid_argument("inner: dimension mismatch");
    return x.dot(space.gram * y);
}

bool is_isometry(const QuadraticSpace& space, const Mat& M, double tol) {
    if (M.rows() != space.dim || M.cols() != space.dim)
        throw std::invalid_argument("is_isometry: dimension mismatch");
    double r = (M.transpose() * space.gram * M - space.gram).cwiseAbs().maxCoeff();
    return r <= tol && std::abs(M.determinant() - 1.0) <= tol;
}

namespace {

bool diagonal_standard(const QuadraticSpace& s) {
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) {
            double g = s.gram(i, j);
            if (i != j && g != 0.0) return false;
            if (i == j && i < s.p && g != 1.0) return false;
            if (i == j && i >= s.p && g != -1.0) return false;
        }
    return true;
}

}  // namespace

bool in_identity_component(const QuadraticSpace& space, const Mat& M, double tol) {
    // O(p,q) membership only: det -1 elements get a plain false
    if (M.rows() != space.dim || M.cols() != space.dim ||
        (M.transpose() * space.gram * M - space.gram).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("in_identity_component: not an isometry");
    Mat N = M;
    if (!diagonal_standard(space)) {
        // gram = V D V^t; S = |D|^{1/2} V^t sends the form to diag(sign D).
        Eigen::SelfAdjointEigenSolver<Mat> es(space.gram);
        std::vector<int> order(space.dim);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return es.eigenvalues()(a) > es.eigenvalues()(b);
        });
        Mat S(space.dim, space.dim);
        for (int r = 0; r < space.dim; ++r) {
            int k = order[r];
            S.row(r) = std::sqrt(std::abs(es.eigenvalues()(k))) * es.eigenvectors().col(k).transpose();
        }
        N = S * M * S.inverse();
    }
    int p = space.p, q = space.q;
    return N.topLeftCorner(p, p).determinant() > 0 && N.bottomRightCorner(q, q).determinant() > 0;
}

std::vector<Vec> signed_orthonormalize(const QuadraticSpace& space,
                                       const std::vector<Vec>& vectors,
                                       const std::vector<int>& expected_signs,
                                       double tol) {
    if (vectors.size() != expected_signs.size())
        throw std::invalid_argument("signed_orthonormalize: size mismatch");
    std::vector<Vec> out;
    std::vector<double> norms;
    for (size_t i = 0; i < vectors.size(); ++i) {
        Vec v = vectors[i];
        for (size_t k = 0; k < out.size(); ++k) v -= inner(space, v, out[k]) / norms[k] * out[k];
        double nn = inner(space, v, v);
        if (std::abs(nn) < tol) throw degenerate_error("signed_orthonormalize: near-null vector");
        int sign = nn > 0 ? 1 : -1;
        if (sign != expected_signs[i])
            throw degenerate_error("signed_orthonormalize: sign mismatch at vector " + std::to_string(i));
        out.push_back(v / std::sqrt(std::abs(nn)));
        norms.push_back(sign);
    }
    return out;
}

}  // namespace pseudohyp
