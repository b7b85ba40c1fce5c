#include "pseudohyp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pseudohyp {

namespace {

using Json = nlohmann::ordered_json;

const Rect kWindow{-2.0, 2.0, 0.2, 4.0};
// Harmonicity window; see codifferential_step for why it is smaller.
const Rect kHarmonicWindow{-1.0, 1.0, 0.5, 2.0};

std::vector<UHPoint> grid(const Rect& r, int nx, int ny) {
    std::vector<UHPoint> pts;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            double tx = nx == 1 ? 0.0 : double(i) / (nx - 1);
            double ty = ny == 1 ? 0.0 : double(j) / (ny - 1);
            pts.emplace_back(r.x0 + tx * (r.x1 - r.x0), r.y0 + ty * (r.y1 - r.y0));
        }
    return pts;
}

std::vector<UHPoint> random_points(std::mt19937_64& rng, int count, const Rect& r = kWindow) {
    std::uniform_real_distribution<double> ux(r.x0, r.x1), uy(r.y0, r.y1);
    std::vector<UHPoint> pts;
    for (int k = 0; k < count; ++k) {
        double x = ux(rng);
        pts.emplace_back(x, uy(rng));
    }
    return pts;
}

Moebius random_sl2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ua(0.5, 2.0), ub(-1.0, 1.0), sign(0.0, 1.0);
    double a = ua(rng) * (sign(rng) < 0.5 ? -1.0 : 1.0);
    double b = ub(rng), c = ub(rng);
    Moebius A;
    A << a, b, c, (1.0 + b * c) / a;
    return A;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double max_abs(const Mat& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

std::string fmt(double v) { return format_double(v); }

std::string mono(const QuadDiff& q) {
    for (size_t k = 0; k < q.coeffs.size(); ++k)
        if (q.coeffs[k] != cd(0.0)) return k == 0 ? "1" : k == 1 ? "z" : "z^" + std::to_string(k);
    return "0";
}

const std::vector<QuadDiff>& test_differentials() {
    static const std::vector<QuadDiff> qs{{{1.0}}, {{0.0, 1.0}}, {{0.0, 0.0, 1.0}}};
    return qs;
}

class Suite {
public:
    explicit Suite(const VerifyOptions& o) : opt_(o) {}

    void check(const std::string& name, const std::string& ref, double residual, double tol,
               const std::string& details = "") {
        double t = opt_.tol.value_or(tol);
        bool ok = residual <= t;  // NaN fails
        out_.push_back({name, ref, ok ? "pass" : "fail", residual, t, details});
    }
    // Fixed-margin checks (negative controls, exact set equality) ignore --tol.
    void check_fixed(const std::string& name, const std::string& ref, double residual, double tol,
                     const std::string& details = "") {
        out_.push_back({name, ref, residual <= tol ? "pass" : "fail", residual, tol, details});
    }
    void reported(const std::string& name, const std::string& ref, double residual, const std::string& details) {
        out_.push_back({name, ref, "reported", residual, 0.0, details});
    }
    std::vector<CheckRecord> take() { return std::move(out_); }

private:
    VerifyOptions opt_;
    std::vector<CheckRecord> out_;
};

// ---- fuchsian -----------------------------------------------------------

std::array<double, 3> printed_sharp_block(int k, double x, double y) {
    const double r2 = x * x + y * y;
    switch (k) {
        case 0: return {1.0, x, -x * x};
        case 1: return {x, -x * r2, -x * r2};
        default: return {-x * x, -x * r2, r2};
    }
}

void fuchsian_suite(Suite& s, std::mt19937_64& rng) {
    {
        double worst = 0.0;
        for (const auto& z : random_points(rng, 50)) {
            auto fp = frame_matrix(SurfaceCase::fuchsian_f, z);
            worst = std::max(worst, max_abs(fp.H - printed_fuchsian_H(z)));
            worst = std::max(worst, max_abs(fp.P * fp.P.transpose() - printed_fuchsian_Hinv(z)));
        }
        s.check("H matches printed closed form", "frame matrix of f and its inverse", worst, 1e-10,
                "50 random points in [-2,2]x[0.2,4]");
    }
    s.check("H(i) is the identity", "frame matrix of f at i",
            max_abs(frame_matrix(SurfaceCase::fuchsian_f, UHPoint{0, 1}).H - Mat::Identity(5, 5)), 1e-14);

    const Embedding f = make_embedding(EmbeddingKind::fuchsian_f);
    const auto pts = grid(kWindow, 20, 20);
    {
        double worst = 0.0, pi = 0.0;
        for (const auto& z : pts) {
            Vec v = f.map(z);
            worst = std::max({worst, rel(inner(f.space, v, v), -1.0), std::abs(v(3)), std::abs(v(4))});
            for (const auto& P : surface_geometry(f, z).second_ff) pi = std::max(pi, P.cwiseAbs().maxCoeff());
        }
        s.check("f lies on the hyperboloid", "f lands in the totally geodesic H^2", worst, 1e-10, "20x20 grid");
        s.check("f is totally geodesic", "second fundamental form of f", pi, 1e-10, "20x20 grid, analytic derivatives");
    }
    {
        double eq = 0.0, hom = 0.0;
        for (int k = 0; k < 100; ++k) {
            Moebius A = random_sl2(rng), B = random_sl2(rng);
            UHPoint z = random_points(rng, 1)[0];
            eq = std::max(eq, max_abs(f.map(moebius_apply(A, z)) - phi_block(A) * f.map(z)));
            hom = std::max(hom, max_abs(phi_block(A * B) - phi_block(A) * phi_block(B)));
        }
        s.check("block equivariance", "f(A.z) = Phi(A) f(z)", eq, 1e-9, "100 random (A, z)");
        s.check("block homomorphism", "Phi(AB) = Phi(A) Phi(B)", hom, 1e-9, "100 random (A, B)");
    }
    {
        double worst = 0.0;
        for (const auto& z : pts)
            worst = std::max(worst, rel(tangent_iota(Variant::block, z), iota_closed_form(Variant::block, z)));
        s.check("block iota = 16y^2", "iota of the block tangent family", worst, 1e-10, "20x20 grid, relative");
    }
    {
        const OrderedBasis B = standard_basis(2);
        double d1 = 0.0;
        std::array<double, 3> dk{0.0, 0.0, 0.0};
        for (const auto& z : random_points(rng, 20)) {
            Mat H = frame_matrix(SurfaceCase::fuchsian_f, z).H;
            for (int k = 0; k < 3; ++k) {
                CVec c = sharp(H, B.elements[k].cast<cd>(), B);
                auto p = printed_sharp_block(k, z.x, z.y);
                double scale = 4.0 / (z.y * z.y);
                double diff = 0.0;
                for (int j = 0; j < B.size(); ++j) {
                    double expect = j < 3 ? scale * p[j] : 0.0;
                    diff = std::max(diff, std::abs(c(j) - expect) / std::max(1.0, std::abs(expect)));
                }
                dk[k] = std::max(dk[k], diff);
                if (k == 0) d1 = std::max(d1, diff);
            }
        }
        s.check("#E1 matches printed closed form", "sharp of E1 for the block frame", d1, 1e-10,
                "20 random points, relative");
        s.reported("#E2 printed comparison", "sharp of E2 for the block frame", dk[1],
                   "computed (4/y^2)(x E1* + (x^2 + y^2/2) E2* - x(x^2+y^2) E3*); printed E2* coefficient "
                   "-x(x^2+y^2)");
        s.reported("#E3 printed comparison", "sharp of E3 for the block frame", dk[2],
                   "computed (4/y^2)(-x^2 E1* - x(x^2+y^2) E2* + (x^2+y^2)^2 E3*); printed E3* coefficient "
                   "(x^2+y^2)");
    }
}

// ---- hitchin --------------------------------------------------------------

Vec printed_g_tilde(const UHPoint& z) {
    const double h = std::sqrt(2.0) / 2.0;
    Vec v(3);
    v << h * (z.x * z.x + z.y * z.y) / 2.0, h * 2.0 * z.x / z.y, h / z.y;
    return v;
}

void hitchin_suite(Suite& s, std::mt19937_64& rng) {
    const Embedding F = make_embedding(EmbeddingKind::hitchin_F);
    const auto pts = grid(kWindow, 20, 20);
    {
        double norm = 0.0, mean = 0.0, conf = 0.0;
        for (const auto& z : pts) {
            Vec v = F.map(z);
            norm = std::max(norm, rel(inner(F.space, v, v), -1.0));
            auto g = surface_geometry(F, z);
            mean = std::max(mean, g.mean_curvature_norm);
            // relative to the conformal factor, which reaches 75 at y = 0.2
            const double lambda = std::max(1.0, g.g_T(0, 0));
            conf = std::max({conf, std::abs(g.g_T(0, 1)) / lambda, std::abs(g.g_T(0, 0) - g.g_T(1, 1)) / lambda});
        }
        s.check("F lies on the quadric", "F has norm -1", norm, 1e-10, "20x20 grid");
        s.check("F is maximal", "mean curvature of F", mean, 1e-6, "20x20 grid, analytic derivatives");
        s.check("F is conformal", "conformal coordinate for F", conf, 1e-10,
                "20x20 grid; |g12| and |g11 - g22| divided by max(1, g11)");
    }
    {
        double eq = 0.0, hom = 0.0;
        for (int k = 0; k < 100; ++k) {
            Moebius A = random_sl2(rng), B = random_sl2(rng);
            UHPoint z = random_points(rng, 1)[0];
            eq = std::max(eq, max_abs(F.map(moebius_apply(A, z)) - phi_irr(A) * F.map(z)));
            hom = std::max(hom, max_abs(phi_irr(A * B) - phi_irr(A) * phi_irr(B)));
        }
        s.check("F equivariance", "F(A.z) = Phi_irr(A) F(z)", eq, 1e-9, "100 random (A, z)");
        s.check("Phi_irr homomorphism", "Phi_irr(AB) = Phi_irr(A) Phi_irr(B)", hom, 1e-9, "100 random (A, B)");
    }
    {
        double other = 0.0, e14 = 0.0;
        for (const auto& z : random_points(rng, 20)) {
            Mat D = phi_irr(point_to_matrix(z)) - phi_irr_printed(z);
            e14 = std::max(e14, std::abs(D(0, 3)));
            D(0, 3) = 0.0;
            other = std::max(other, max_abs(D) / std::max(1.0, max_abs(phi_irr_printed(z))));
        }
        s.check("Phi_irr matches printed matrix off entry (1,4)", "irreducible representation on the upper "
                "triangular family", other, 1e-12, "20 random points, relative");
        s.reported("printed Phi_irr entry (1,4)", "irreducible representation on the upper triangular family", e14,
                   "homomorphic value (-1-3x^2+y^2)/(2y); printed value has the opposite sign");
    }
    {
        double worst = 0.0;
        for (const auto& z : pts)
            worst = std::max(worst, rel(tangent_iota(Variant::irreducible, z),
                                        iota_closed_form(Variant::irreducible, z)));
        s.check("irreducible iota closed form", "iota of the irreducible tangent family", worst, 1e-10,
                "20x20 grid, relative; computed value is 80 y^2 under the Ad-equivariant pairing, which "
                "agrees with 20(1+x^4+y^4+2x^2(1+y^2))^2/y^2 only at z = i");
    }
    {
        const auto samples = random_points(rng, 20);
        double u1n1 = 0.0, u2 = 0.0;
        std::array<double, 2> n2{0.0, 0.0};
        for (const auto& z : samples) {
            const Mat P = frame_matrix(SurfaceCase::hitchin_F, z).P;
            const QuadraticSpace S = standard_space(2);
            const Mat pr = printed_hitchin_frame(z, N2Variant::corrected);
            u1n1 = std::max({u1n1, max_abs(pr.col(0) - P.col(0)), max_abs(pr.col(2) - P.col(3))});
            u2 = std::max(u2, max_abs(pr.col(1) - P.col(1)));
            for (auto v : {N2Variant::printed, N2Variant::corrected}) {
                Vec N2 = printed_hitchin_frame(z, v).col(3);
                double r = std::abs(inner(S, N2, N2) + 1.0);
                for (int c : {0, 1, 2, 3}) r = std::max(r, std::abs(inner(S, N2, P.col(c))));
                double& slot = n2[v == N2Variant::printed ? 0 : 1];
                slot = std::max(slot, r);
            }
        }
        s.check("printed u1 and N1 match the frame", "explicit frame of F", u1n1, 1e-10, "20 random points");
        s.reported("printed u2 comparison", "explicit frame of F", u2,
                   "fifth entry printed as -(1-x^4-y^4)/(2y^2); frame value -(1+x^4-y^4)/(2y^2)");
        s.reported("N2 first entry: printed variant", "explicit frame of F", n2[0],
                   "x/(2y^2)(x+x^2-3y^2); orthonormality defect against u1, u2, F, N1 and norm -1");
        s.reported("N2 first entry: corrected variant", "explicit frame of F", n2[1],
                   "x/(2y^2)(1+x^2-3y^2); orthonormality defect against u1, u2, F, N1 and norm -1");
    }
    {
        double b2 = 0.0, b2p = 0.0, raw = 0.0, mean = 0.0, eq = 0.0;
        const Embedding V = make_embedding(EmbeddingKind::veronese_chain);
        for (const auto& z : pts) {
            Vec g = g_tilde(z);
            b2 = std::max(b2, std::abs(inner(b2_space(), g, g) + 1.0));
            Vec gp = printed_g_tilde(z);
            b2p = std::max(b2p, std::abs(inner(b2_space(), gp, gp) + 1.0));
            Vec sq = veronese_square_raw(g);
            raw = std::max(raw, rel(inner(b4_space(), sq, sq), -2.0 / 3.0));
            try {
                mean = std::max(mean, surface_geometry(V, z).mean_curvature_norm);
            } catch (const degenerate_error&) {
                mean = std::numeric_limits<double>::infinity();
            }
        }
        for (int k = 0; k < 50; ++k) {
            Moebius A = random_sl2(rng);
            UHPoint z = random_points(rng, 1)[0];
            Vec a = V.map(moebius_apply(A, z)), b = V.holonomy(A) * V.map(z);
            eq = std::max(eq, std::min(max_abs(a - b), max_abs(a + b)) / std::max(1.0, max_abs(a)));
        }
        s.check("g-tilde has b2-norm -1", "equivariant lift to the b2 model", b2, 1e-12, "20x20 grid");
        s.reported("printed g-tilde formula", "equivariant lift to the b2 model", b2p,
                   "printed first entry (x^2+y^2)/2 instead of (x^2+y^2)/y; |b2 + 1| over the grid");
        s.check("raw square has b4-norm -2/3", "square map into the b4 model", raw, 1e-10, "20x20 grid, relative");
        s.check("Veronese chain is space-like and maximal", "square map into the b4 model", mean, 1e-6,
                "20x20 grid, analytic derivatives in the b4 model");
        s.check("Veronese chain equivariance", "square map into the b4 model", eq, 1e-9,
                "50 random (A, z), up to the sign of the representative");
    }
}

// ---- forms ----------------------------------------------------------------

double harmonic_residual(Variant v, const QuadDiff& q, const UHPoint& z) {
    SurfaceCase c = v == Variant::block ? SurfaceCase::fuchsian_f : SurfaceCase::hitchin_F;
    return codifferential_residual(tangent_form(q, v), frame_h_field(c), standard_basis(2), z);
}

BundleForm negative_probe() {
    FormTerm t;
    t.comp = Component::dx;
    t.scalar = [](const UHPoint&) { return cd(1.0); };
    t.matrix = [](const UHPoint& z) { return CMat(z.y * standard_basis(2).elements[0].cast<cd>()); };
    return {{t}};
}

std::array<std::array<double, 3>, 10> printed_step3() {
    // coefficients (1, z, z^2) of E1*..E10* in the printed expansion
    return {{{0, 0, 20}, {0, -20, 0}, {-20, 0, 0}, {-2, 0, -2}, {-2, -2, 0},
             {0, 0, 0}, {0, 0, 0}, {-2, 0, 2}, {0, -4, 0}, {-2, 0, 2}}};
}

std::string poly_string(const std::array<cd, 3>& a) {
    std::ostringstream os;
    bool first = true;
    const char* mon[] = {"", "z", "z^2"};
    for (int k = 0; k < 3; ++k) {
        double re = std::abs(a[k].real()) < 1e-9 ? 0.0 : a[k].real();
        if (re == 0.0 && std::abs(a[k].imag()) < 1e-9) continue;
        char buf[64];
        if (first)
            std::snprintf(buf, sizeof buf, "%.6g%s", re, mon[k]);
        else
            std::snprintf(buf, sizeof buf, " %c %.6g%s", re < 0 ? '-' : '+', std::abs(re), mon[k]);
        os << buf;
        first = false;
    }
    return first ? "0" : os.str();
}

void forms_suite(Suite& s, std::mt19937_64&) {
    const auto inner_pts = grid(kHarmonicWindow, 5, 5);
    for (Variant v : {Variant::block, Variant::irreducible}) {
        double worst = 0.0;
        for (const auto& q : test_differentials())
            for (const auto& z : inner_pts) worst = std::max(worst, harmonic_residual(v, q, z));
        s.check(v == Variant::block ? "block tangent forms are harmonic" : "irreducible tangent forms are harmonic",
                "codifferential of psi dz (x) Phi_*(tangent)", worst, 1e-6,
                "psi in {1, z, z^2}, 5x5 grid on [-1,1]x[0.5,2]");
    }
    {
        double worst = 0.0;
        std::string where;
        for (Variant v : {Variant::block, Variant::irreducible})
            for (const auto& q : test_differentials())
                for (const auto& z : grid(kWindow, 5, 5)) {
                    double r = harmonic_residual(v, q, z);
                    if (r > worst) {
                        worst = r;
                        where = std::string(v == Variant::block ? "block" : "irreducible") + ", psi = " + mono(q) +
                                ", z = " + fmt(z.x) + " + " + fmt(z.y) + "i";
                    }
                }
        s.reported("harmonicity residual on the full window", "codifferential of psi dz (x) Phi_*(tangent)", worst,
                   "5x5 grid on [-2,2]x[0.2,4], worst at " + where +
                       "; dominated by rounding in coefficients assembled from large ambient matrices");
    }
    {
        double r = codifferential_residual(negative_probe(), frame_h_field(SurfaceCase::fuchsian_f),
                                           standard_basis(2), UHPoint{0, 1});
        s.check_fixed("non-harmonic probe is detected", "negative control dx (x) y E1",
                      std::max(0.0, 0.1 - r), 0.0, "probe residual " + fmt(r) + " must exceed 0.1");
    }
    {
        double worst = 0.0;
        for (Variant v : {Variant::block, Variant::irreducible})
            for (const auto& q : test_differentials())
                for (const auto& z : inner_pts) {
                    CMat d = exterior_d(tangent_form(q, v), z, codifferential_step(z));
                    worst = std::max(worst, d.cwiseAbs().maxCoeff());
                }
        s.check("tangent forms are d-closed", "holomorphic tangent forms are closed", worst, 1e-8,
                "psi in {1, z, z^2}, 5x5 grid on [-1,1]x[0.5,2]");
    }
    {
        // coefficients of #(Phi_irr_*(tangent)) in the Hitchin basis, fitted as quadratics in z
        const OrderedBasis B = hitchin_basis();
        auto coeffs = [&](cd z) {
            UHPoint p{z.real(), z.imag()};
            return CVec(sharp(frame_matrix(SurfaceCase::hitchin_F, p).H, phi_irr_star(tangent_sl2(z)), B));
        };
        const std::array<cd, 3> nodes{cd(0, 1), cd(1, 1), cd(0, 2)};
        Eigen::Matrix3cd V;
        for (int r = 0; r < 3; ++r) V.row(r) << 1.0, nodes[r], nodes[r] * nodes[r];
        CMat rhs(3, B.size());
        for (int r = 0; r < 3; ++r) rhs.row(r) = coeffs(nodes[r]).transpose();
        CMat fit = V.partialPivLu().solve(rhs);  // 3 x 10
        double fit_res = 0.0;
        for (cd z : {cd(-0.5, 1.5), cd(0.7, 0.6), cd(1.3, 2.2)}) {
            CVec c = coeffs(z);
            for (int j = 0; j < B.size(); ++j) {
                cd pred = fit(0, j) + fit(1, j) * z + fit(2, j) * z * z;
                fit_res = std::max(fit_res, std::abs(pred - c(j)) / std::max(1.0, std::abs(c(j))));
            }
        }
        s.check("Step-3 coefficients are quadratic in z", "sharp of the irreducible tangent family", fit_res, 1e-8,
                "fit on i, 1+i, 2i; checked at three further points");
        auto printed = printed_step3();
        double diff = 0.0;
        std::ostringstream det;
        for (int j = 0; j < B.size(); ++j) {
            std::array<cd, 3> a{fit(0, j), fit(1, j), fit(2, j)};
            std::array<cd, 3> p{printed[j][0], printed[j][1], printed[j][2]};
            for (int k = 0; k < 3; ++k) diff = std::max(diff, std::abs(a[k] - p[k]));
            det << (j ? "; " : "") << B.labels[j] << "*: computed " << poly_string(a) << ", printed "
                << poly_string(p);
        }
        s.reported("Step-3 expansion comparison", "sharp of the irreducible tangent family", diff, det.str());
    }
    {
        BundleForm w = tangent_form(QuadDiff{{1.0, 1.0}}, Variant::block);
        UHPoint a{-0.5, 0.8}, b{0.7, 1.6};
        CMat p1 = cocycle_integrate(w, {a, UHPoint{b.x, a.y}, b});
        CMat p2 = cocycle_integrate(w, {a, UHPoint{a.x, b.y}, b});
        CMat p3 = cocycle_integrate(w, {a, b});
        double r = std::max((p1 - p2).cwiseAbs().maxCoeff(), (p1 - p3).cwiseAbs().maxCoeff());
        s.check("cocycle path independence", "periods of a closed form", r, 1e-10,
                "three polylines from -0.5+0.8i to 0.7+1.6i");
    }
}

// ---- metric ---------------------------------------------------------------

void metric_suite(Suite& s, std::mt19937_64& rng) {
    const Rect R{0.0, 1.0, 1.0, 2.0};
    {
        const std::vector<std::pair<QuadDiff, QuadDiff>> pairs{
            {{{1.0}}, {{1.0}}}, {{{0.0, 1.0}}, {{0.0, 1.0}}}, {{{1.0, 1.0}}, {{0.0, 0.0, 1.0}}}};
        double worst = 0.0;
        for (const auto& [p, q] : pairs) {
            double g = quadrature([&](double x, double y) { return g_integrand(p, q, Variant::block, UHPoint{x, y}); },
                                  R, 24);
            double wp = quadrature(
                [&](double x, double y) {
                    UHPoint z{x, y};
                    return wp_integrand(p(z.z()), q(z.z()), z);
                },
                R, 24);
            worst = std::max(worst, std::abs(g - 32.0 * wp) / std::abs(32.0 * wp));
        }
        s.check("wp ratio = 32", "block metric is 32 times Weil-Petersson", worst, 1e-10,
                "[0,1]x[1,2], Gauss-Legendre order 24, pairs (1,1), (z,z), (1+z,z^2)");
    }
    {
        auto rep = wp_ratio_report(Variant::block, R, 10);
        double r = std::max(std::abs(rep.min_ratio - 32.0), std::abs(rep.max_ratio - 32.0)) / 32.0;
        s.check("block ratio is constant", "block metric is 32 times Weil-Petersson", rep.constant ? r : 1.0, 1e-9,
                "10x10 grid, min " + fmt(rep.min_ratio) + ", max " + fmt(rep.max_ratio));
    }
    {
        auto rep = wp_ratio_report(Variant::irreducible, R, 10);
        s.check_fixed("irreducible ratio is not constant", "irreducible metric is not a multiple of Weil-Petersson",
                      rep.constant ? 1.0 : 0.0, 0.0,
                      "10x10 grid, min " + fmt(rep.min_ratio) + ", max " + fmt(rep.max_ratio));
        double r1 = wp_ratio_at(Variant::irreducible, UHPoint{0, 1});
        s.check("irreducible ratio at i = 160", "irreducible metric at z = i", std::abs(r1 - 160.0) / 160.0,
                1e-10, "computed " + fmt(r1));
        double r2 = wp_ratio_at(Variant::irreducible, UHPoint{0, 2});
        s.check("irreducible ratio at 2i = 2890", "irreducible metric at z = 2i", std::abs(r2 - 2890.0) / 2890.0,
                1e-10, "computed " + fmt(r2));
    }
    {
        // g is unchanged by (M, H) -> (Q M Q^-1, Q^t H Q)
        const Mat Q = matrix_Q();
        double worst = 0.0, sym = 0.0, pos = std::numeric_limits<double>::infinity();
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (const auto& z : random_points(rng, 50)) {
            QuadDiff p{{cd(u(rng), u(rng)), cd(u(rng), u(rng))}}, q{{cd(u(rng), u(rng)), cd(u(rng), u(rng))}};
            for (Variant v : {Variant::block, Variant::irreducible}) {
                SurfaceCase c = v == Variant::block ? SurfaceCase::fuchsian_f : SurfaceCase::hitchin_F;
                HField H = frame_h_field(c);
                HField HQ = [H, Q](const UHPoint& w) { return Mat(Q.transpose() * H(w) * Q); };
                BundleForm a = tangent_form(p, v), b = tangent_form(q, v);
                double g0 = g_integrand(a, b, H, z);
                double g1 = g_integrand(conjugate_form(a, Q), conjugate_form(b, Q), HQ, z);
                worst = std::max(worst, rel(g1, g0));
                // Cauchy-Schwarz scale: |g(a,b)| <= sqrt(g(a,a) g(b,b))
                double scale = std::sqrt(g_integrand(a, a, H, z) * g_integrand(b, b, H, z));
                sym = std::max(sym, std::abs(g_integrand(b, a, H, z) - g0) / std::max(1.0, scale));
                pos = std::min(pos, g_integrand(a, a, H, z) / std::max(1e-300, std::norm(p(z.z()))));
            }
        }
        s.check("g is invariant under q", "isometry q with Q = diag(1,1,1,1,-1)", worst, 1e-10, "50 random points");
        s.check("g is symmetric", "pairing g", sym, 1e-10, "50 random points");
        s.check_fixed("g is positive", "pairing g", pos > 0 ? 0.0 : 1.0, 0.0,
                      "min g(w,w)/|psi|^2 = " + fmt(pos));
    }
}

// ---- orbifold -------------------------------------------------------------

bool same_set(std::vector<Mat> a, std::vector<Mat> b) {
    if (a.size() != b.size()) return false;
    for (const Mat& m : a) {
        auto it = std::find_if(b.begin(), b.end(), [&](const Mat& x) { return x == m; });
        if (it == b.end()) return false;
        b.erase(it);
    }
    return true;
}

std::string diag_string(const Mat& D) {
    std::string s = "diag(";
    for (int i = 0; i < D.rows(); ++i) s += (i ? "," : "") + std::string(D(i, i) > 0 ? "1" : "-1");
    return s + ")";
}

void orbifold_suite(Suite& s, std::mt19937_64& rng) {
    {
        // printed: E5, E7, E9, E10 change sign, the others are fixed
        const std::vector<int> printed{1, 1, 1, 1, -1, 1, -1, 1, -1, -1};
        auto table = sign_table(matrix_A(), standard_basis(2));
        int mismatches = 0;
        for (int j = 0; j < 10; ++j)
            if (table[j].target != j || table[j].sign != printed[j]) ++mismatches;
        s.check_fixed("conjugation-A sign table matches printed", "conjugation by A on the basis", mismatches, 0.0,
                      std::to_string(mismatches) + " of 10 rows differ");
    }
    {
        std::mt19937_64 local(rng());
        double cross = 0.0;
        std::string details;
        for (auto shape : {SubgroupShape{ShapeLabel::so22xso1, 2}, SubgroupShape{ShapeLabel::so21xso2, 2},
                           SubgroupShape{ShapeLabel::so21xso1xso1, 2}, SubgroupShape{ShapeLabel::so23xso1k, 4},
                           SubgroupShape{ShapeLabel::so23xso1k, 5}, SubgroupShape{ShapeLabel::so23xso1k, 8}}) {
            auto c = centralizer(shape);
            bool ok = same_set(c.elements, centralizer_bruteforce(shape, 50, local));
            if (!ok) cross += 1.0;
            details += (details.empty() ? "" : "; ") + shape_name(shape.label) + " n=" + std::to_string(shape.n) +
                       ": " + std::to_string(c.elements.size()) + " elements, " + c.group_type;
        }
        s.check_fixed("centralizer brute force agrees", "centralizers of the block shapes", cross, 0.0, details);
    }
    {
        auto c22 = centralizer({ShapeLabel::so22xso1, 2});
        auto c211 = centralizer({ShapeLabel::so21xso1xso1, 2});
        const Mat I5 = Mat::Identity(5, 5);
        double bad = 0.0;
        bad += same_set(c22.elements, {I5, matrix_A()}) && c22.group_type == "Z2" ? 0 : 1;
        bad += same_set(c211.elements, {I5, matrix_A(), matrix_B(), matrix_C()}) && c211.group_type == "Z2xZ2" ? 0 : 1;
        s.check_fixed("n = 2 centralizers match printed sets", "centralizers for n = 2", bad, 0.0,
                      "so22xso1 -> {Id, A}; so21xso1xso1 -> {Id, A, B, C}");
    }
    {
        auto c = centralizer({ShapeLabel::so21xso2, 2});
        std::string elems;
        for (const auto& e : c.elements) elems += (elems.empty() ? "" : ", ") + diag_string(e);
        s.reported("so21xso2 diagonal centralizer", "non-orbifold singularity", c.exhaustive ? 0.0 : 1.0,
                   "diagonal part {" + elems + "}; the SO(2) factor adds a continuous centralizer, so the "
                   "enumeration is not exhaustive");
    }
    {
        double bad = 0.0;
        std::string details;
        for (int n = 3; n <= 8; ++n) {
            int q = quotient_size({ShapeLabel::so23xso1k, n});
            int expect = (1 << (n - 2)) / static_cast<int>(center(n).size());
            if (q != expect) bad += 1.0;
            details += (n > 3 ? ", " : "") + std::string("n=") + std::to_string(n) + ": " + std::to_string(q);
        }
        s.check_fixed("quotient sizes for n = 3..8", "orbifold type of the quotient", bad, 0.0, details);
        s.check_fixed("n = 3 gives a smooth point", "orbifold type of the quotient",
                      quotient_size({ShapeLabel::so23xso1k, 3}) == 1 ? 0.0 : 1.0, 0.0);
    }
    {
        // Q acts trivially on the so(2,2) x so(1) block algebra
        double worst = 0.0;
        std::normal_distribution<double> g(0.0, 1.0);
        const OrderedBasis B = standard_basis(2);
        for (int k = 0; k < 50; ++k) {
            Mat M = Mat::Zero(5, 5);
            for (int j = 0; j < B.size(); ++j)
                if (B.elements[j].col(4).isZero() && B.elements[j].row(4).isZero()) M += g(rng) * B.elements[j];
            worst = std::max(worst, max_abs(conjugate(matrix_Q(), M) - M));
        }
        s.check("q fixes the block shape", "fixed locus of q", worst, 1e-15, "50 random so(2,2) elements");
    }
    const std::vector<std::pair<std::string, Mat>> Ls{
        {"A", matrix_A()}, {"B", matrix_B()}, {"C", matrix_C()}, {"Q", matrix_Q()}};
    for (SurfaceCase c : {SurfaceCase::fuchsian_f, SurfaceCase::hitchin_F}) {
        const std::string cname = c == SurfaceCase::fuchsian_f ? "fuchsian" : "hitchin";
        for (const auto& [name, L] : Ls) {
            double inv = invariance_suite(L, c, 100, rng);
            s.check("invariance under " + name + " (" + cname + ")", "iota is preserved by the centralizer", inv,
                    1e-10, "100 random pairs; H kept for L in SO_0(2,3), Q^t H Q for Q");
            double harm = 0.0;
            for (const auto& q : test_differentials())
                for (const auto& z : grid(kHarmonicWindow, 3, 3))
                    harm = std::max(harm, conjugated_harmonicity(L, c, q, z));
            s.check("conjugated forms stay harmonic under " + name + " (" + cname + ")",
                    "centralizer sends harmonic forms to harmonic forms", harm, 1e-6,
                    "psi in {1, z, z^2}, 3x3 grid on [-1,1]x[0.5,2]");
        }
    }
    {
        auto raw = printed_basis_raw();
        std::string which;
        double worst = 0.0;
        for (int j = 0; j < 10; ++j) {
            double r = membership_residual(standard_space(2), raw[j]);
            if (r > 1e-12) which += (which.empty() ? "E" : ", E") + std::to_string(j + 1);
            worst = std::max(worst, r);
        }
        s.reported("printed basis membership", "basis of so(2,3)", worst,
                   "outside so(2,3) as printed: " + which + "; corrected matrices are used");
    }
}

using SuiteFn = void (*)(Suite&, std::mt19937_64&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> s{{"fuchsian", fuchsian_suite},
                                                                {"hitchin", hitchin_suite},
                                                                {"forms", forms_suite},
                                                                {"metric", metric_suite},
                                                                {"orbifold", orbifold_suite}};
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "fuchsian", "hitchin", "orbifold", "forms", "metric"};
    return names;
}

std::vector<CheckRecord> run_suite(const std::string& suite, const VerifyOptions& opt) {
    std::vector<CheckRecord> out;
    bool found = false;
    for (const auto& [name, fn] : suites()) {
        if (suite != "all" && suite != name) continue;
        found = true;
        // each suite gets its own stream so "all" repeats the single-suite runs
        std::mt19937_64 rng(opt.seed);
        Suite s(opt);
        fn(s, rng);
        for (auto& r : s.take()) out.push_back(std::move(r));
    }
    if (!found) throw std::invalid_argument("unknown suite: " + suite);
    return out;
}

bool any_failed(const std::vector<CheckRecord>& checks) {
    return std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == "fail"; });
}

nlohmann::ordered_json report_json(const std::string& suite, const VerifyOptions& opt,
                                   const std::vector<CheckRecord>& checks) {
    Json j;
    j["version"] = "report-v1";
    j["suite"] = suite;
    j["seed"] = opt.seed;
    j["checks"] = Json::array();
    for (const auto& c : checks) {
        Json r;
        r["name"] = c.name;
        r["paper_ref"] = c.paper_ref;
        r["status"] = c.status;
        r["max_residual"] = c.max_residual;
        r["tolerance"] = c.tolerance;
        r["details"] = c.details;
        j["checks"].push_back(std::move(r));
    }
    return j;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* s = std::getenv("PSEUDOHYP_SEED");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0') return fallback;
    return v;
}

const std::vector<std::string>& sample_objects() {
    static const std::vector<std::string> objs{"f", "F", "iota_fuchsian", "iota_hitchin", "g_integrand_block",
                                               "g_integrand_irr"};
    return objs;
}

std::string sample_csv(const std::string& object, const Rect& r, int nx, int ny) {
    if (std::find(sample_objects().begin(), sample_objects().end(), object) == sample_objects().end())
        throw std::invalid_argument("unknown sample object: " + object);
    if (!(r.y0 > 0.0) || !(r.y1 > 0.0)) throw std::invalid_argument("rectangle must lie in y > 0");
    if (nx < 1 || ny < 1) throw std::invalid_argument("nx and ny must be >= 1");

    std::string header = "x,y";
    if (object == "f" || object == "F")
        for (int k = 1; k <= 5; ++k) header += "," + object + std::to_string(k);
    else if (object == "iota_fuchsian" || object == "iota_hitchin")
        header += ",iota";
    else
        header += ",g_integrand,wp_integrand,ratio";

    std::string out = header + "\n";
    const QuadDiff one{{1.0}};
    for (const auto& z : grid(r, nx, ny)) {
        std::vector<double> row{z.x, z.y};
        if (object == "f" || object == "F") {
            Vec v = object == "f" ? fuchsian_embed(z) : hitchin_embed(z);
            for (int k = 0; k < 5; ++k) row.push_back(v(k));
        } else if (object == "iota_fuchsian") {
            row.push_back(tangent_iota(Variant::block, z));
        } else if (object == "iota_hitchin") {
            row.push_back(tangent_iota(Variant::irreducible, z));
        } else {
            Variant v = object == "g_integrand_block" ? Variant::block : Variant::irreducible;
            double g = g_integrand(one, one, v, z), wp = wp_integrand(1.0, 1.0, z);
            row.insert(row.end(), {g, wp, g / wp});
        }
        for (size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_double(row[k]);
        out += "\n";
    }
    return out;
}

TableOutput make_table(const std::string& kind, int n, const std::string& shape, const std::string& basis) {
    TableOutput t;
    t.json["version"] = "report-v1";
    t.json["table"] = kind;
    if (kind.rfind("conjugation-", 0) == 0) {
        const std::string which = kind.substr(12);
        Mat L;
        if (which == "Id") {
            L = Mat::Identity(n + 3, n + 3);
        } else {
            if (n != 2) throw std::invalid_argument("conjugation tables for A, B, C, Q need n = 2");
            if (which == "A") L = matrix_A();
            else if (which == "B") L = matrix_B();
            else if (which == "C") L = matrix_C();
            else if (which == "Q") L = matrix_Q();
            else throw std::invalid_argument("unknown table kind: " + kind);
        }
        OrderedBasis B;
        if (basis == "standard") B = standard_basis(n);
        else if (basis == "hitchin" && n == 2) B = hitchin_basis();
        else throw std::invalid_argument("unknown basis: " + basis);
        t.json["n"] = n;
        t.json["basis"] = basis;
        t.json["rows"] = Json::array();
        for (const auto& e : sign_table(L, B)) {
            const std::string& src = B.labels[e.source];
            std::string tgt = e.target < 0 ? "" : (e.sign > 0 ? "+" : "-") + B.labels[e.target];
            t.text += src + " → " + (e.target < 0 ? "(not a multiple of a basis element)" : tgt) + "\n";
            Json row;
            row["source"] = src;
            row["target"] = e.target < 0 ? Json(nullptr) : Json(B.labels[e.target]);
            row["sign"] = e.sign;
            t.json["rows"].push_back(std::move(row));
        }
        return t;
    }
    if (kind == "centralizer") {
        SubgroupShape s{parse_shape(shape), n};
        auto c = centralizer(s);
        t.json["shape"] = shape;
        t.json["n"] = n;
        t.json["group_type"] = c.group_type;
        t.json["quotient_size"] = c.quotient_size;
        t.json["exhaustive"] = c.exhaustive;
        t.json["elements"] = Json::array();
        for (const auto& e : c.elements) {
            std::vector<int> d;
            for (int i = 0; i < e.rows(); ++i) d.push_back(e(i, i) > 0 ? 1 : -1);
            t.json["elements"].push_back(d);
            t.text += diag_string(e) + "\n";
        }
        Json z = Json::array();
        std::string centre;
        for (const auto& e : center(n)) {
            z.push_back(e(0, 0) > 0 ? "Id" : "-Id");
            centre += (centre.empty() ? "" : ", ") + std::string(e(0, 0) > 0 ? "Id" : "-Id");
        }
        t.json["center"] = z;
        t.text += "group " + c.group_type + ", center {" + centre + "}, quotient size " +
                  std::to_string(c.quotient_size) + (c.exhaustive ? "" : ", not exhaustive (continuous part)") + "\n";
        return t;
    }
    throw std::invalid_argument("unknown table kind: " + kind);
}

}  // namespace pseudohyp
