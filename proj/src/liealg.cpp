#include "pseudohyp/liealg.hpp"

#include "pseudohyp/surfaces.hpp"

#include <cmath>
#include <stdexcept>

namespace pseudohyp {

namespace {

Mat entries(int dim, std::initializer_list<std::tuple<int, int, double>> list) {
    Mat M = Mat::Zero(dim, dim);
    for (auto [i, j, v] : list) M(i - 1, j - 1) = v;
    return M;
}

Mat sym_gen(int dim, int i, int j) { return entries(dim, {{i, j, 1.0}, {j, i, 1.0}}); }
Mat rot_gen(int dim, int i, int j) { return entries(dim, {{i, j, 1.0}, {j, i, -1.0}}); }

Eigen::PartialPivLU<Mat> checked_lu(const Mat& H) {
    if (H.rows() != H.cols()) throw std::invalid_argument("H must be square");
    Eigen::FullPivLU<Mat> full(H);
    if (!full.isInvertible()) throw degenerate_error("singular scalar-product matrix");
    return Eigen::PartialPivLU<Mat>(H);
}

}  // namespace

double membership_residual(const QuadraticSpace& space, const Mat& X) {
    if (X.rows() != space.dim || X.cols() != space.dim)
        throw std::invalid_argument("membership_residual: dimension mismatch");
    return (X.transpose() * space.gram + space.gram * X).cwiseAbs().maxCoeff();
}

double membership_residual(const QuadraticSpace& space, const CMat& X) {
    return std::max(membership_residual(space, Mat(X.real())), membership_residual(space, Mat(X.imag())));
}

OrderedBasis standard_basis(int n) {
    if (n < 2) throw std::invalid_argument("standard_basis: n must be >= 2");
    const int dim = n + 3;
    OrderedBasis B;
    B.n = n;
    B.elements.push_back(entries(dim, {{1, 2, -1}, {1, 3, 1}, {2, 1, 1}, {3, 1, 1}}));
    B.elements.push_back(sym_gen(dim, 2, 3));
    B.elements.push_back(entries(dim, {{1, 2, 1}, {1, 3, 1}, {2, 1, -1}, {3, 1, 1}}));
    for (int i = 1; i <= 2; ++i)
        for (int j = 4; j <= dim; ++j) B.elements.push_back(sym_gen(dim, i, j));
    for (int i = 3; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) B.elements.push_back(rot_gen(dim, i, j));
    for (int k = 0; k < B.size(); ++k) B.labels.push_back("E" + std::to_string(k + 1));
    return B;
}

std::vector<Mat> printed_basis_raw() {
    return {
        entries(5, {{1, 2, -1}, {1, 3, 1}, {2, 1, 1}, {3, 1, 1}}),
        entries(5, {{2, 3, 1}, {3, 2, 1}}),
        entries(5, {{1, 2, 1}, {1, 3, 1}, {2, 1, -1}, {3, 1, 1}}),
        entries(5, {{1, 4, 1}, {4, 1, 1}}),
        entries(5, {{1, 5, 1}, {4, 1, 1}, {5, 1, 1}}),
        entries(5, {{2, 4, 1}, {4, 2, 1}}),
        entries(5, {{2, 5, 1}, {5, 2, 1}}),
        entries(5, {{3, 4, 1}, {4, 3, 1}}),
        entries(5, {{3, 5, 1}, {5, 3, 1}}),
        entries(5, {{4, 5, 1}, {5, 4, -1}}),
    };
}

OrderedBasis hitchin_basis() {
    Eigen::Matrix2d e, h, f;
    e << 0, 1, 0, 0;
    h << 0.5, 0, 0, -0.5;
    f << 0, 0, 1, 0;
    OrderedBasis std2 = standard_basis(2);
    OrderedBasis B;
    B.n = 2;
    B.elements = {phi_irr_star(e), phi_irr_star(h), phi_irr_star(f),
                  rot_gen(5, 1, 2),  std2.elements[4], std2.elements[5],
                  sym_gen(5, 2, 3),  std2.elements[7], std2.elements[8],
                  std2.elements[3]};
    B.labels = {"E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "E10"};
    return B;
}

double iota_pair(const Mat& H, const Mat& M, const Mat& N) {
    auto lu = checked_lu(H);
    // tr(M^t H N H^{-1}) = tr(H^{-1} M^t H N)
    return (lu.solve(M.transpose() * H * N)).trace();
}

cd iota_pair_complex(const Mat& H, const CMat& M, const CMat& N) {
    auto lu = checked_lu(H);
    CMat Hc = H.cast<cd>();
    CMat Hinv = lu.inverse().cast<cd>();
    return (M.transpose() * Hc * N.conjugate() * Hinv).trace();
}

cd iota_pair_printed_order(const Mat& H, const CMat& M, const CMat& N) {
    auto lu = checked_lu(H);
    CMat Hc = H.cast<cd>();
    CMat Hinv = lu.inverse().cast<cd>();
    return (M.transpose() * Hinv * N.conjugate() * Hc).trace();
}

CVec sharp(const Mat& H, const CMat& M, const OrderedBasis& basis) {
    auto lu = checked_lu(H);
    if (basis.size() == 0 || basis.elements[0].rows() != M.rows())
        throw std::invalid_argument("sharp: basis dimension mismatch");
    // iota(M, E) = tr(E K) with K = H^{-1} M^t H, for real E
    CMat K = lu.inverse().cast<cd>() * M.transpose() * H.cast<cd>();
    CVec out(basis.size());
    for (int j = 0; j < basis.size(); ++j)
        out(j) = (basis.elements[j].cast<cd>().cwiseProduct(K.transpose())).sum();
    return out;
}

Mat conjugate(const Mat& L, const Mat& M) { return L * M * L.inverse(); }

CMat conjugate(const Mat& L, const CMat& M) {
    CMat Lc = L.cast<cd>();
    return Lc * M * Mat(L.inverse()).cast<cd>();
}

std::vector<SignEntry> sign_table(const Mat& L, const OrderedBasis& basis, double tol) {
    std::vector<SignEntry> out;
    for (int j = 0; j < basis.size(); ++j) {
        Mat C = conjugate(L, basis.elements[j]);
        SignEntry e{j, -1, 0};
        for (int k = 0; k < basis.size() && e.target < 0; ++k) {
            if ((C - basis.elements[k]).cwiseAbs().maxCoeff() <= tol) e = {j, k, 1};
            else if ((C + basis.elements[k]).cwiseAbs().maxCoeff() <= tol) e = {j, k, -1};
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace pseudohyp
