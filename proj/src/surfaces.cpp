#include "pseudohyp/surfaces.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace pseudohyp {

namespace {

const double kSqrt3 = std::sqrt(3.0);

template <size_t N>
Vec to_vec(const std::array<double, N>& a) {
    Vec v(N);
    for (size_t i = 0; i < N; ++i) v(i) = a[i];
    return v;
}

template <size_t N>
std::array<Vec, 6> jet_columns(const std::array<Jet, N>& a) {
    std::array<Vec, 6> out;
    for (auto& v : out) v.resize(N);
    for (size_t i = 0; i < N; ++i) {
        out[0](i) = a[i].v;
        out[1](i) = a[i].x;
        out[2](i) = a[i].y;
        out[3](i) = a[i].xx;
        out[4](i) = a[i].xy;
        out[5](i) = a[i].yy;
    }
    return out;
}

// Matrix of P(x,y) -> P(ax+cy, bx+dy) on binary forms of degree deg,
// coefficients ordered x^deg, x^{deg-1}y, ..., y^deg.
Mat sym_power(const Moebius& A, int deg) {
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    Mat S = Mat::Zero(deg + 1, deg + 1);
    for (int k = 0; k <= deg; ++k) {
        // x^{deg-k} y^k -> (ax+cy)^{deg-k} (bx+dy)^k
        Vec poly = Vec::Zero(deg + 1);
        poly(0) = 1.0;
        int cur = 0;
        auto mul = [&](double p, double q) {
            Vec next = Vec::Zero(deg + 1);
            for (int i = 0; i <= cur; ++i) {
                next(i) += p * poly(i);
                next(i + 1) += q * poly(i);
            }
            poly = next;
            ++cur;
        };
        for (int i = 0; i < deg - k; ++i) mul(a, c);
        for (int i = 0; i < k; ++i) mul(b, d);
        S.col(k) = poly;
    }
    return S;
}

Mat exp_nilpotent(const Mat& N, double t) {
    Mat out = Mat::Identity(N.rows(), N.cols());
    Mat term = Mat::Identity(N.rows(), N.cols());
    for (int k = 1; k < N.rows(); ++k) {
        term = term * N * (t / k);
        out += term;
    }
    return out;
}

// exp(log(y) * Phi_irr_*(h/2)), h/2 = diag(1/2, -1/2).
Mat exp_irr_diagonal(double y) {
    Mat D = Mat::Identity(5, 5);
    double c1 = 0.5 * (y + 1.0 / y), s1 = 0.5 * (y - 1.0 / y);
    double y2 = y * y;
    double c2 = 0.5 * (y2 + 1.0 / y2), s2 = 0.5 * (y2 - 1.0 / y2);
    D(0, 0) = D(3, 3) = c1;
    D(0, 3) = D(3, 0) = s1;
    D(1, 1) = D(4, 4) = c2;
    D(1, 4) = D(4, 1) = s2;
    return D;
}

Mat phi_irr_upper(const UHPoint& z) {
    Eigen::Matrix2d e;
    e << 0, 1, 0, 0;
    return exp_nilpotent(phi_irr_star(e), z.x) * exp_irr_diagonal(z.y);
}

template <class Scalar>
Eigen::Matrix<Scalar, 5, 5> block_star(const Scalar& a, const Scalar& b, const Scalar& c) {
    Eigen::Matrix<Scalar, 5, 5> M = Eigen::Matrix<Scalar, 5, 5>::Zero();
    M(0, 1) = c - b;
    M(0, 2) = c + b;
    M(1, 0) = b - c;
    M(1, 2) = Scalar(2.0) * a;
    M(2, 0) = b + c;
    M(2, 1) = Scalar(2.0) * a;
    return M;
}

template <class Scalar>
Eigen::Matrix<Scalar, 5, 5> irr_star(const Scalar& a, const Scalar& b, const Scalar& c) {
    const Scalar s3(kSqrt3), two(2.0), four(4.0);
    Eigen::Matrix<Scalar, 5, 5> M;
    M << Scalar(0), c - b, s3 * (b + c), two * a, b + c,
         b - c, Scalar(0), Scalar(0), b + c, four * a,
         s3 * (b + c), Scalar(0), Scalar(0), s3 * (c - b), Scalar(0),
         two * a, b + c, s3 * (b - c), Scalar(0), c - b,
         b + c, four * a, Scalar(0), b - c, Scalar(0);
    return M;
}

template <class M2>
void check_traceless(const M2& X) {
    if (std::abs(X(0, 0) + X(1, 1)) > 1e-12)
        throw std::invalid_argument("sl2 element must be traceless");
}

}  // namespace

UHPoint::UHPoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y_ > 0.0)) throw std::invalid_argument("UHPoint: y must be positive");
}

UHPoint moebius_apply(const Moebius& A, const UHPoint& z) {
    cd w = (A(0, 0) * z.z() + A(0, 1)) / (A(1, 0) * z.z() + A(1, 1));
    return {w.real(), w.imag()};
}

Moebius point_to_matrix(const UHPoint& z) {
    Moebius A;
    A << z.y, z.x, 0.0, 1.0;
    return A / std::sqrt(z.y);
}

bool moebius_equal(const Moebius& A, const Moebius& B, double tol) {
    return (A - B).cwiseAbs().maxCoeff() <= tol || (A + B).cwiseAbs().maxCoeff() <= tol;
}

Vec fuchsian_embed(const UHPoint& z) { return to_vec(fuchsian_embed_t(z.x, z.y)); }

Mat phi_block(const Moebius& A) {
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    Mat M = Mat::Identity(5, 5);
    M(0, 0) = a * d + b * c;
    M(0, 1) = a * c - b * d;
    M(0, 2) = a * c + b * d;
    M(1, 0) = a * b - c * d;
    M(1, 1) = (a * a - b * b - c * c + d * d) / 2;
    M(1, 2) = (a * a + b * b - c * c - d * d) / 2;
    M(2, 0) = a * b + c * d;
    M(2, 1) = (a * a - b * b + c * c - d * d) / 2;
    M(2, 2) = (a * a + b * b + c * c + d * d) / 2;
    return M;
}

Mat phi_block_star(const Eigen::Matrix2d& X) {
    check_traceless(X);
    return block_star<double>(X(0, 0), X(0, 1), X(1, 0));
}

CMat phi_block_star(const Eigen::Matrix2cd& X) {
    check_traceless(X);
    return block_star<cd>(X(0, 0), X(0, 1), X(1, 0));
}

Vec hitchin_embed(const UHPoint& z) { return to_vec(hitchin_embed_t(z.x, z.y)); }

Mat phi_irr_star(const Eigen::Matrix2d& X) {
    check_traceless(X);
    return irr_star<double>(X(0, 0), X(0, 1), X(1, 0));
}

CMat phi_irr_star(const Eigen::Matrix2cd& X) {
    check_traceless(X);
    return irr_star<cd>(X(0, 0), X(0, 1), X(1, 0));
}

Mat phi_irr(const Moebius& A) {
    if (std::abs(A.determinant() - 1.0) > 1e-10)
        throw std::invalid_argument("phi_irr: det must be 1");
    // Iwasawa: A = point_to_matrix(A.i) * K, K a rotation fixing i.
    UHPoint z = moebius_apply(A, UHPoint{});
    Moebius K = point_to_matrix(z).inverse() * A;
    double theta = std::atan2(K(0, 1), K(0, 0));
    Eigen::Matrix2d k;
    k << 0, 1, -1, 0;
    Mat R = (theta * phi_irr_star(k)).exp();
    return phi_irr_upper(z) * R;
}

Mat phi_irr_printed(const UHPoint& z) {
    const double x = z.x, y = z.y;
    const double x2 = x * x, y2 = y * y, x4 = x2 * x2, y4 = y2 * y2;
    Mat M(5, 5);
    M << (1 + 3 * x2 + y2) / (2 * y), -x * (1 + x2) / y2, kSqrt3 * x, -(-1 - 3 * x2 + y2) / (2 * y), x * (1 + x2) / y2,
         x * y + x2 * x / y, (1 - x4 + y4) / (2 * y2), kSqrt3 * x2, x * y - x2 * x / y, (-1 + x4 + y4) / (2 * y2),
         kSqrt3 * x / y, -kSqrt3 * x2 / y2, 1, -kSqrt3 * x / y, kSqrt3 * x2 / y2,
         (-1 + 3 * x2 + y2) / (2 * y), x * (1 - x2) / y2, kSqrt3 * x, (1 - 3 * x2 + y2) / (2 * y), x * (-1 + x2) / y2,
         x * y + x2 * x / y, -(1 + x4 - y4) / (2 * y2), kSqrt3 * x2, x * y - x2 * x / y, (1 + x4 + y4) / (2 * y2);
    return M;
}

Eigen::Matrix3d tau_tilde(const Moebius& A) {
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    Eigen::Matrix3d T;
    T << a * a, a * b, b * b,
         2 * a * c, a * d + b * c, 2 * b * d,
         c * c, c * d, d * d;
    return T;
}

Vec g_tilde(const UHPoint& z) { return to_vec(g_tilde_t(z.x, z.y)); }

Vec veronese_square_raw(const Vec& p) {
    if (p.size() != 3) throw std::invalid_argument("veronese_square: expected 3 coefficients");
    return to_vec(veronese_square_raw_t<double>({p(0), p(1), p(2)}));
}

Vec veronese_square(const Vec& p) {
    if (inner(b2_space(), p, p) >= 0.0)
        throw std::invalid_argument("veronese_square: input must have negative b2-norm");
    Vec sq = veronese_square_raw(p);
    return sq / std::sqrt(-inner(b4_space(), sq, sq));
}

Embedding make_embedding(EmbeddingKind kind) {
    switch (kind) {
        case EmbeddingKind::fuchsian_f: return {kind, standard_space(2), "fuchsian_f"};
        case EmbeddingKind::hitchin_F: return {kind, standard_space(2), "hitchin_F"};
        case EmbeddingKind::veronese_chain: return {kind, b4_space(), "veronese_chain"};
    }
    throw std::invalid_argument("unknown embedding");
}

Vec Embedding::map(const UHPoint& z) const {
    switch (kind) {
        case EmbeddingKind::fuchsian_f: return fuchsian_embed(z);
        case EmbeddingKind::hitchin_F: return hitchin_embed(z);
        case EmbeddingKind::veronese_chain: return to_vec(veronese_chain_t(z.x, z.y));
    }
    throw std::invalid_argument("unknown embedding");
}

Mat Embedding::holonomy(const Moebius& A) const {
    switch (kind) {
        case EmbeddingKind::fuchsian_f: return phi_block(A);
        case EmbeddingKind::hitchin_F: return phi_irr(A);
        // Substitution action on quartics; sends the chain at z to the
        // chain at A.z up to the global sign of the representative.
        case EmbeddingKind::veronese_chain: return sym_power(A, 4);
    }
    throw std::invalid_argument("unknown embedding");
}

std::array<Vec, 6> Embedding::derivatives(const UHPoint& z, DerivMode mode, double step) const {
    if (mode == DerivMode::analytic) {
        Jet x = Jet::var_x(z.x), y = Jet::var_y(z.y);
        switch (kind) {
            case EmbeddingKind::fuchsian_f: return jet_columns(fuchsian_embed_t(x, y));
            case EmbeddingKind::hitchin_F: return jet_columns(hitchin_embed_t(x, y));
            case EmbeddingKind::veronese_chain: return jet_columns(veronese_chain_t(x, y));
        }
    }
    if (step <= 0.0) step = default_step(z);
    auto f = [&](double dx, double dy) { return map(UHPoint{z.x + dx, z.y + dy}); };
    const Vec f0 = f(0, 0);
    auto d1x = [&](double h) -> Vec { return (f(h, 0) - f(-h, 0)) / (2 * h); };
    auto d1y = [&](double h) -> Vec { return (f(0, h) - f(0, -h)) / (2 * h); };
    auto d2xx = [&](double h) -> Vec { return (f(h, 0) - 2 * f0 + f(-h, 0)) / (h * h); };
    auto d2yy = [&](double h) -> Vec { return (f(0, h) - 2 * f0 + f(0, -h)) / (h * h); };
    auto d2xy = [&](double h) -> Vec {
        return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    };
    // second derivatives use a larger base step; one Richardson level each
    const double h1 = step, h2 = std::sqrt(step) * 1e-1 * std::max(1.0, z.y);
    if (z.y <= 2 * std::max(h1, h2)) throw std::invalid_argument("derivatives: step too large for chart");
    auto rich = [](const Vec& coarse, const Vec& fine) -> Vec { return (4 * fine - coarse) / 3; };
    return {f0,
            rich(d1x(h1), d1x(h1 / 2)),
            rich(d1y(h1), d1y(h1 / 2)),
            rich(d2xx(h2), d2xx(h2 / 2)),
            rich(d2xy(h2), d2xy(h2 / 2)),
            rich(d2yy(h2), d2yy(h2 / 2))};
}

double default_step(const UHPoint& z) { return 1e-5 * std::max(1.0, z.y); }

SurfaceGeometry surface_geometry(const Embedding& e, const UHPoint& z, DerivMode mode, double step) {
    const QuadraticSpace& S = e.space;
    auto d = e.derivatives(z, mode, step);
    const Vec& ex = d[1];
    const Vec& ey = d[2];

    SurfaceGeometry g;
    g.g_T << inner(S, ex, ex), inner(S, ex, ey), inner(S, ey, ex), inner(S, ey, ey);
    if (!(g.g_T(0, 0) > 0 && g.g_T.determinant() > 0))
        throw degenerate_error("surface_geometry: point is not space-like");
    auto tan = signed_orthonormalize(S, {ex, ey}, {1, 1});
    g.tangent = {tan[0], tan[1]};

    // b-orthogonal complement of span{e_x, e_y, e}
    Mat W(S.dim, 3);
    W << ex, ey, d[0];
    Mat comp = Eigen::FullPivLU<Mat>(W.transpose() * S.gram).kernel();
    const int n = S.dim - 3;
    if (comp.cols() != n) throw degenerate_error("surface_geometry: degenerate normal completion");
    std::vector<Vec> cols;
    for (int k = 0; k < n; ++k) cols.push_back(comp.col(k));
    g.normals = signed_orthonormalize(S, cols, std::vector<int>(n, -1));

    const Eigen::Matrix2d ginv = g.g_T.inverse();
    g.mean_curvature = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
        const Vec& N = g.normals[k];
        Eigen::Matrix2d Pi;
        Pi(0, 0) = -inner(S, d[3], N);
        Pi(0, 1) = Pi(1, 0) = -inner(S, d[4], N);
        Pi(1, 1) = -inner(S, d[5], N);
        g.second_ff.push_back(Pi);
        g.shape.push_back(-ginv * Pi);
        g.mean_curvature(k) = (ginv.cwiseProduct(Pi)).sum();
    }
    g.mean_curvature_norm = g.mean_curvature.norm();
    return g;
}

FramePackage frame_matrix(SurfaceCase c, const UHPoint& z) {
    const Embedding e = make_embedding(c == SurfaceCase::fuchsian_f ? EmbeddingKind::fuchsian_f
                                                                   : EmbeddingKind::hitchin_F);
    auto d = e.derivatives(z, DerivMode::analytic, 0.0);
    const QuadraticSpace& S = e.space;
    Vec u1 = d[1] / std::sqrt(inner(S, d[1], d[1]));
    Vec u2 = d[2] / std::sqrt(inner(S, d[2], d[2]));
    Vec N1 = Vec::Zero(5), N2 = Vec::Zero(5);
    N1(3) = 1.0;
    N2(4) = 1.0;
    if (c == SurfaceCase::hitchin_F) {
        N2 << 0.0, 0.0, -kSqrt3 / 2, 0.0, 0.5;
        Mat A = phi_irr_upper(z);
        N1 = A * N1;
        N2 = A * N2;
    }
    FramePackage fp;
    fp.P.resize(5, 5);
    fp.P << u1, u2, d[0], N1, N2;
    // P^t I P = J gives (P P^t)^{-1} = I P P^t I without an inversion.
    const Mat& I = S.gram;
    Vec j(5);
    j << 1, 1, -1, -1, -1;
    Mat dev = fp.P.transpose() * I * fp.P - Mat(j.asDiagonal());
    if (dev.cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, fp.P.cwiseAbs().maxCoeff())) {
        fp.H = I * fp.P * fp.P.transpose() * I;
        return fp;
    }
    Eigen::FullPivLU<Mat> lu(fp.P * fp.P.transpose());
    if (!lu.isInvertible()) throw degenerate_error("frame_matrix: degenerate frame");
    fp.H = lu.inverse();
    return fp;
}

Mat printed_fuchsian_H(const UHPoint& z) {
    const double x = z.x, y = z.y, y2 = y * y, r2 = x * x + y2;
    Mat H = Mat::Identity(5, 5);
    H(0, 0) = 2 * x * x / y2 + 1;
    H(0, 1) = H(1, 0) = x * (r2 - 1) / y2;
    H(0, 2) = H(2, 0) = -x * (r2 + 1) / y2;
    H(1, 1) = (r2 - 1) * (r2 - 1) / (2 * y2) + 1;
    H(1, 2) = H(2, 1) = -(r2 + 1) * (r2 - 1) / (2 * y2);
    H(2, 2) = (r2 + 1) * (r2 + 1) / (2 * y2) - 1;
    return H;
}

Mat printed_fuchsian_Hinv(const UHPoint& z) {
    Mat H = printed_fuchsian_H(z);
    H(0, 2) = H(2, 0) = -H(0, 2);
    H(1, 2) = H(2, 1) = -H(1, 2);
    return H;
}

Mat printed_hitchin_frame(const UHPoint& z, N2Variant v) {
    const double x = z.x, y = z.y;
    const double x2 = x * x, y2 = y * y, x4 = x2 * x2, y4 = y2 * y2;
    Mat F(5, 4);
    F.col(0) << (1 + 3 * x2 + y2) / (2 * y), x / y * (y2 + x2), kSqrt3 * x / y, (-1 + 3 * x2 + y2) / (2 * y),
        x / y * (y2 + x2);
    F.col(1) << -x * (1 + x2) / y2, (1 - x4 + y4) / (2 * y2), -kSqrt3 * x2 / y2, x * (1 - x2) / y2,
        -(1 - x4 - y4) / (2 * y2);
    F.col(2) << (-1 - 3 * x2 + y2) / (2 * y), x / y * (y2 - x2), -kSqrt3 * x / y, (1 - 3 * x2 + y2) / (2 * y),
        x / y * (y2 - x2);
    const double first = v == N2Variant::printed ? x / (2 * y2) * (x + x2 - 3 * y2)
                                                 : x / (2 * y2) * (1 + x2 - 3 * y2);
    F.col(3) << first, (-1 + x4 - 6 * x2 * y2 + y4) / (4 * y2), kSqrt3 / 2 * (x2 / y2 - 1),
        x / (2 * y2) * (-1 + x2 - 3 * y2), (1 + x4 - 6 * x2 * y2 + y4) / (4 * y2);
    return F;
}

Eigen::Matrix2cd tangent_sl2(cd z) {
    Eigen::Matrix2cd v;
    v << -z, z * z, -1.0, z;
    return v;
}

}  // namespace pseudohyp
