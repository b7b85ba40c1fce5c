#include "pseudohyp/surfaces.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using namespace pseudohyp;

namespace {

Moebius random_sl2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    Moebius A;
    do {
        A << u(rng), u(rng), u(rng), u(rng);
    } while (std::abs(A.determinant()) < 0.2);
    if (A.determinant() < 0) A.row(0) *= -1;
    return A / std::sqrt(A.determinant());
}

UHPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(-2, 2), uy(0.2, 4);
    return {ux(rng), uy(rng)};
}

double sdiff(const Mat& a, const Mat& b) { return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff()); }

}  // namespace

TEST_CASE("moebius action and point_to_matrix") {
    UHPoint z{1, 2};
    auto w = moebius_apply(Moebius::Identity(), z);
    CHECK(w.x == 1.0);
    CHECK(w.y == 2.0);
    auto v = moebius_apply(point_to_matrix(z), UHPoint{0, 1});
    CHECK(v.x == doctest::Approx(1.0));
    CHECK(v.y == doctest::Approx(2.0));
    Moebius R;
    R << 0, 1, -1, 0;
    auto r = moebius_apply(R, UHPoint{0, 1});
    CHECK(std::abs(r.x) <= 1e-15);
    CHECK(r.y == doctest::Approx(1.0));

    CHECK(point_to_matrix(UHPoint{0, 1}) == Moebius::Identity());
    Moebius T;
    T << 1, 1, 0, 1;
    CHECK(moebius_equal(point_to_matrix(UHPoint{1, 1}), T));
    Moebius D;
    D << 2, 0, 0, 0.5;
    CHECK(moebius_equal(point_to_matrix(UHPoint{0, 4}), D));
    CHECK(moebius_equal(-D, D));
    CHECK_THROWS(UHPoint(0.0, -1.0));
}

TEST_CASE("block embedding") {
    Vec fi = fuchsian_embed(UHPoint{0, 1});
    Vec expect(5);
    expect << 0, 0, 1, 0, 0;
    CHECK((fi - expect).norm() == 0.0);
    auto S = standard_space(2);
    Vec f = fuchsian_embed(UHPoint{1, 2});
    CHECK(inner(S, f, f) == doctest::Approx(-1.0).epsilon(1e-14));

    Moebius T;
    T << 1, 1, 0, 1;
    CHECK((fuchsian_embed(moebius_apply(T, UHPoint{0, 1})) - phi_block(T) * fi).norm() <= 1e-14);
    CHECK(phi_block(Moebius::Identity()) == Mat::Identity(5, 5));

    std::mt19937_64 rng(21);
    for (int k = 0; k < 50; ++k) {
        Moebius A = random_sl2(rng), B = random_sl2(rng);
        Mat PA = phi_block(A);
        CHECK((phi_block(A * B) - PA * phi_block(B)).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, PA.norm()));
        CHECK(is_isometry(S, PA, 1e-9 * PA.squaredNorm()));
    }
}

TEST_CASE("block Lie algebra map") {
    CHECK(phi_block_star(Eigen::Matrix2d(Eigen::Matrix2d::Zero())).isZero());
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int k = 0; k < 10; ++k) {
        Eigen::Matrix2d X, Y;
        X << g(rng), g(rng), g(rng), 0;
        X(1, 1) = -X(0, 0);
        Y << g(rng), g(rng), g(rng), 0;
        Y(1, 1) = -Y(0, 0);
        Mat a = phi_block_star(X), b = phi_block_star(Y);
        Eigen::Matrix2d XY = X * Y - Y * X;
        CHECK((phi_block_star(XY) - (a * b - b * a)).cwiseAbs().maxCoeff() <= 1e-12);
        // derivative of the group map
        const double t = 1e-6;
        Moebius ep = (t * X).exp(), em = (-t * X).exp();
        CHECK(((phi_block(ep) - phi_block(em)) / (2 * t) - a).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("irreducible embedding") {
    Vec Fi = hitchin_embed(UHPoint{0, 1});
    Vec expect(5);
    expect << 0, 0, 0.5, 0, std::sqrt(3.0) / 2;
    CHECK((Fi - expect).norm() <= 1e-15);
    auto S = standard_space(2);
    Vec F = hitchin_embed(UHPoint{1, 2});
    CHECK(inner(S, F, F) == doctest::Approx(-1.0).epsilon(1e-13));
    Moebius A = point_to_matrix(UHPoint{1, 1});
    CHECK((hitchin_embed(moebius_apply(A, UHPoint{0, 1})) - phi_irr(A) * Fi).norm() <= 1e-12);
    CHECK((phi_irr(Moebius::Identity()) - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-14);

    // printed matrix: exact at 1 + 2i, where entry (1,4) vanishes
    CHECK((phi_irr(point_to_matrix(UHPoint{1, 2})) - phi_irr_printed(UHPoint{1, 2})).cwiseAbs().maxCoeff() <= 1e-12);
    Mat D = phi_irr(point_to_matrix(UHPoint{1, 1})) - phi_irr_printed(UHPoint{1, 1});
    CHECK(std::abs(D(0, 3)) == doctest::Approx(3.0));
    D(0, 3) = 0;
    CHECK(D.cwiseAbs().maxCoeff() <= 1e-12);

    std::mt19937_64 rng(8);
    for (int k = 0; k < 100; ++k) {
        Moebius a = random_sl2(rng), b = random_sl2(rng);
        Mat Pa = phi_irr(a), Pb = phi_irr(b);
        CHECK(sdiff(phi_irr(a * b), Pa * Pb) <= 1e-9 * std::max(1.0, Pa.norm() * Pb.norm()));
        UHPoint z = random_point(rng);
        Vec lhs = hitchin_embed(moebius_apply(a, z)), rhs = Pa * hitchin_embed(z);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, rhs.norm()));
    }
}

TEST_CASE("irreducible Lie algebra map") {
    Eigen::Matrix2d e;
    e << 0, 1, 0, 0;
    Mat E1 = phi_irr_star(e);
    Vec row(5);
    row << 0, -1, std::sqrt(3.0), 0, 1;
    CHECK((Vec(E1.row(0).transpose()) - row).norm() <= 1e-14);
    CHECK(phi_irr_star(Eigen::Matrix2d(Eigen::Matrix2d::Zero())).isZero());
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int k = 0; k < 5; ++k) {
        Eigen::Matrix2d X;
        X << g(rng), g(rng), g(rng), 0;
        X(1, 1) = -X(0, 0);
        const double t = 1e-5;
        Mat fd = (phi_irr((t * X).exp()) - phi_irr((-t * X).exp())) / (2 * t);
        CHECK((fd - phi_irr_star(X)).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(membership_residual(standard_space(2), phi_irr_star(X)) <= 1e-12);
    }
}

TEST_CASE("twisted polynomial models") {
    const double h = std::sqrt(2.0) / 2;
    Vec gi = g_tilde(UHPoint{0, 1});
    CHECK(std::abs(gi(0) - h) <= 1e-15);
    CHECK(gi(1) == 0.0);
    CHECK(std::abs(gi(2) - h) <= 1e-15);
    CHECK((tau_tilde(Moebius::Identity()) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);

    // raw square: coefficients of (a x^2 + b xy + c y^2)^2 by discrete convolution
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; ++k) {
        Vec p(3);
        p << g(rng), g(rng), g(rng);
        Vec conv = Vec::Zero(5);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) conv(i + j) += p(i) * p(j);
        CHECK((veronese_square_raw(p) - conv).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, conv.norm()));
    }

    Vec raw = veronese_square_raw(gi);
    Vec half(5);
    half << 0.5, 0, 1, 0, 0.5;
    CHECK((raw - half).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(inner(b4_space(), raw, raw) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK((veronese_square(gi) - std::sqrt(1.5) * half).cwiseAbs().maxCoeff() <= 1e-14);

    // tau_tilde is an isometry of b2 and g_tilde is equivariant
    for (int k = 0; k < 20; ++k) {
        UHPoint z{g(rng), 0.3 + std::abs(g(rng))};
        Vec gz = g_tilde(z);
        CHECK(inner(b2_space(), gz, gz) == doctest::Approx(-1.0).epsilon(1e-12));
        Mat T = tau_tilde(point_to_matrix(z));
        CHECK((T * gi - gz).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, gz.norm()));
        CHECK(is_isometry(b2_space(), T, 1e-10 * std::max(1.0, T.squaredNorm())));
    }
    Vec pos(3);
    pos << 0, 1, 0;
    CHECK_THROWS(veronese_square(pos));
}

TEST_CASE("surface geometry") {
    auto f = make_embedding(EmbeddingKind::fuchsian_f);
    auto F = make_embedding(EmbeddingKind::hitchin_F);
    auto V = make_embedding(EmbeddingKind::veronese_chain);

    auto gf = surface_geometry(f, UHPoint{0, 1});
    for (const auto& P : gf.second_ff) CHECK(P.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(gf.mean_curvature_norm <= 1e-10);

    auto gF = surface_geometry(F, UHPoint{1, 2});
    CHECK(gF.mean_curvature_norm <= 1e-6);
    auto gi = surface_geometry(F, UHPoint{0, 1});
    CHECK(std::abs(gi.g_T(0, 1)) <= 1e-10);
    CHECK(std::abs(gi.g_T(0, 0) - gi.g_T(1, 1)) <= 1e-10);
    CHECK(gi.g_T(0, 0) > 0);

    // finite differences agree with the jets
    auto fd = surface_geometry(F, UHPoint{0.4, 1.3}, DerivMode::finite_difference);
    auto an = surface_geometry(F, UHPoint{0.4, 1.3});
    CHECK((fd.g_T - an.g_T).cwiseAbs().maxCoeff() <= 1e-6 * an.g_T.cwiseAbs().maxCoeff());
    CHECK(fd.mean_curvature_norm <= 1e-4);

    // frame is orthonormal with the expected signs
    for (const auto* e : {&f, &F, &V}) {
        auto sg = surface_geometry(*e, UHPoint{-0.7, 0.8});
        for (int i = 0; i < 2; ++i)
            CHECK(inner(e->space, sg.tangent[i], sg.tangent[i]) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(inner(e->space, sg.tangent[0], sg.tangent[1])) <= 1e-9);
        for (const auto& N : sg.normals) CHECK(inner(e->space, N, N) == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(sg.mean_curvature_norm <= 1e-6);
    }
}

TEST_CASE("embeddings on the main grid") {
    auto S = standard_space(2);
    for (auto kind : {EmbeddingKind::fuchsian_f, EmbeddingKind::hitchin_F, EmbeddingKind::veronese_chain}) {
        auto e = make_embedding(kind);
        double worst = 0;
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                UHPoint z{-2 + 4.0 * i / 19, 0.2 + 3.8 * j / 19};
                Vec v = e.map(z);
                worst = std::max(worst, std::abs(inner(e.space, v, v) + 1) / std::max(1.0, v.squaredNorm()));
            }
        CHECK(worst <= 1e-12);
    }
    (void)S;
}

TEST_CASE("frames and the scalar-product matrix") {
    auto fi = frame_matrix(SurfaceCase::fuchsian_f, UHPoint{0, 1});
    CHECK((fi.H - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-14);
    auto fz = frame_matrix(SurfaceCase::fuchsian_f, UHPoint{1, 2});
    CHECK(fz.H(0, 0) == doctest::Approx(1.5));
    CHECK((fz.H * printed_fuchsian_Hinv(UHPoint{1, 2}) - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-10);

    std::mt19937_64 rng(31);
    for (int k = 0; k < 50; ++k) {
        UHPoint z = random_point(rng);
        for (auto c : {SurfaceCase::fuchsian_f, SurfaceCase::hitchin_F}) {
            auto fp = frame_matrix(c, z);
            Mat H = fp.H;
            CHECK((H - H.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * H.cwiseAbs().maxCoeff());
            CHECK((H * fp.P * fp.P.transpose() - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-8);
            Eigen::SelfAdjointEigenSolver<Mat> es(H);
            CHECK(es.eigenvalues().minCoeff() > 0);
        }
        Mat Hf = frame_matrix(SurfaceCase::fuchsian_f, z).H;
        CHECK((Hf - printed_fuchsian_H(z)).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, Hf.cwiseAbs().maxCoeff()));
    }

    // printed irreducible frame with the corrected second normal; u2 keeps
    // its printed sign slip and is left out
    UHPoint z{0.5, 1.5};
    Mat fr = printed_hitchin_frame(z, N2Variant::corrected);
    auto S = standard_space(2);
    Vec F = hitchin_embed(z);
    for (int c : {0, 2, 3}) {
        CHECK(std::abs(inner(S, fr.col(c), F)) <= 1e-10);
        for (int d : {0, 2, 3}) {
            double expect = c == d ? (c < 2 ? 1.0 : -1.0) : 0.0;
            CHECK(std::abs(inner(S, fr.col(c), fr.col(d)) - expect) <= 1e-9);
        }
    }
    Mat pr = printed_hitchin_frame(z, N2Variant::printed);
    CHECK(std::abs(inner(S, pr.col(3), pr.col(3)) + 1) > 1e-3);
}
