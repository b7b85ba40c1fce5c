#pragma once

#include "pseudohyp/jet.hpp"
#include "pseudohyp/liealg.hpp"
#include "pseudohyp/quadspace.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace pseudohyp {

struct UHPoint {
    double x = 0.0;
    double y = 1.0;

    UHPoint() = default;
    UHPoint(double x_, double y_);
    cd z() const { return {x, y}; }
};

// 2x2 real matrix of determinant 1, taken up to sign.
using Moebius = Eigen::Matrix2d;

UHPoint moebius_apply(const Moebius& A, const UHPoint& z);
Moebius point_to_matrix(const UHPoint& z);
bool moebius_equal(const Moebius& A, const Moebius& B, double tol = 1e-12);

// ---- block (totally geodesic) embedding -------------------------------

template <class T>
std::array<T, 5> fuchsian_embed_t(const T& x, const T& y) {
    T r2 = x * x + y * y;
    T iy = inv(y);
    return {x * iy, (r2 - 1.0) * 0.5 * iy, (r2 + 1.0) * 0.5 * iy, T(0.0), T(0.0)};
}

Vec fuchsian_embed(const UHPoint& z);
Mat phi_block(const Moebius& A);
Mat phi_block_star(const Eigen::Matrix2d& X);
CMat phi_block_star(const Eigen::Matrix2cd& X);

// ---- irreducible (Veronese) embedding ---------------------------------

template <class T>
std::array<T, 5> hitchin_embed_t(const T& x, const T& y) {
    const double s3 = std::sqrt(3.0);
    T x2 = x * x, y2 = y * y, r2 = x2 + y2;
    T c = (s3 * 0.5) * inv(y2);
    return {c * x * (1.0 + r2),
            c * (r2 * r2 - 1.0) * 0.5,
            c * (y2 + 3.0 * x2) * (s3 / 3.0),
            c * x * (r2 - 1.0),
            c * (r2 * r2 + 1.0) * 0.5};
}

Vec hitchin_embed(const UHPoint& z);
Mat phi_irr(const Moebius& A);
Mat phi_irr_star(const Eigen::Matrix2d& X);
CMat phi_irr_star(const Eigen::Matrix2cd& X);
// The matrix printed for Phi_irr(point_to_matrix(z)); entry (1,4) differs
// from the homomorphism in sign.
Mat phi_irr_printed(const UHPoint& z);

// ---- twisted polynomial models -----------------------------------------

Eigen::Matrix3d tau_tilde(const Moebius& A);

// tau_tilde(point_to_matrix(z)) applied to g_tilde(i) = (h, 0, h). The printed
// closed form has (x^2 + y^2) / 2 in the first slot, which is off the quadric.
template <class T>
std::array<T, 3> g_tilde_t(const T& x, const T& y) {
    const double h = std::sqrt(2.0) / 2.0;
    T iy = inv(y);
    return {h * (x * x + y * y) * iy, h * 2.0 * x * iy, h * iy};
}

// Coefficients of P^2 for P = (p0 x^2 + p1 xy + p2 y^2).
template <class T>
std::array<T, 5> veronese_square_raw_t(const std::array<T, 3>& p) {
    return {p[0] * p[0], 2.0 * p[0] * p[1], p[1] * p[1] + 2.0 * p[0] * p[2], 2.0 * p[1] * p[2],
            p[2] * p[2]};
}

template <class T>
T b4_norm_t(const std::array<T, 5>& v) {
    return (-1.0 / 6.0) * v[2] * v[2] - 2.0 * v[0] * v[4] + 0.5 * v[1] * v[3];
}

template <class T>
std::array<T, 5> veronese_chain_t(const T& x, const T& y) {
    using std::sqrt;
    auto sq = veronese_square_raw_t(g_tilde_t(x, y));
    T s = inv(sqrt(-b4_norm_t(sq)));
    for (auto& c : sq) c = c * s;
    return sq;
}

Vec g_tilde(const UHPoint& z);
Vec veronese_square_raw(const Vec& p);
// Normalized to b4-norm -1; rejects b2(P,P) >= 0.
Vec veronese_square(const Vec& p);

// ---- embeddings and numerical surface geometry -------------------------

enum class EmbeddingKind { fuchsian_f, hitchin_F, veronese_chain };
enum class DerivMode { analytic, finite_difference };

struct Embedding {
    EmbeddingKind kind;
    QuadraticSpace space;
    std::string name;

    Vec map(const UHPoint& z) const;
    // holonomy image of A (standard model only).
    Mat holonomy(const Moebius& A) const;
    // position, d/dx, d/dy, d2/dx2, d2/dxdy, d2/dy2
    std::array<Vec, 6> derivatives(const UHPoint& z, DerivMode mode, double step) const;
};

Embedding make_embedding(EmbeddingKind kind);

struct SurfaceGeometry {
    Eigen::Matrix2d g_T;
    std::array<Vec, 2> tangent;          // g_T-orthonormal u1, u2
    std::vector<Vec> normals;            // inner = -1 each
    std::vector<Eigen::Matrix2d> second_ff;  // Pi^k_{ij} in coordinates
    std::vector<Eigen::Matrix2d> shape;      // B(d_i, N_k) = shape[k](m, i) d_m
    Vec mean_curvature;                  // g^{ij} Pi^k_{ij}
    double mean_curvature_norm = 0.0;    // max |component|
};

double default_step(const UHPoint& z);

SurfaceGeometry surface_geometry(const Embedding& e, const UHPoint& z,
                                 DerivMode mode = DerivMode::analytic, double step = 0.0);

// ---- frames and the matrix of the scalar product ------------------------

enum class SurfaceCase { fuchsian_f, hitchin_F };

struct FramePackage {
    Mat P;  // columns u1, u2, embed(z), N1, N2
    Mat H;  // (P P^t)^{-1}
};

FramePackage frame_matrix(SurfaceCase c, const UHPoint& z);

Mat printed_fuchsian_H(const UHPoint& z);
Mat printed_fuchsian_Hinv(const UHPoint& z);

enum class N2Variant { printed, corrected };
// Columns u1, u2, N1, N2 as printed for the irreducible surface.
Mat printed_hitchin_frame(const UHPoint& z, N2Variant v);

// sl2 element of the tangent family [[-z, z^2], [-1, z]].
Eigen::Matrix2cd tangent_sl2(cd z);

}  // namespace pseudohyp
