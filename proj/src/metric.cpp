#include "pseudohyp/metric.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace pseudohyp {

GaussRule gauss_legendre(int order) {
    if (order < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> t(
        gsl_integration_glfixed_table_alloc(static_cast<size_t>(order)), &gsl_integration_glfixed_table_free);
    if (!t) throw std::runtime_error("gauss_legendre: allocation failed");
    GaussRule g;
    for (int i = 0; i < order; ++i) {
        double x = 0.0, w = 0.0;
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &x, &w, t.get());
        g.nodes.push_back(x);
        g.weights.push_back(w);
    }
    return g;
}

double quadrature(const std::function<double(double, double)>& density, const Rect& r, int order) {
    if (r.y0 <= 0.0) throw std::invalid_argument("quadrature: rectangle must lie in y > 0");
    GaussRule g = gauss_legendre(order);
    const double hx = 0.5 * (r.x1 - r.x0), hy = 0.5 * (r.y1 - r.y0);
    const double cx = 0.5 * (r.x1 + r.x0), cy = 0.5 * (r.y1 + r.y0);
    double acc = 0.0;
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            acc += g.weights[i] * g.weights[j] * density(cx + hx * g.nodes[i], cy + hy * g.nodes[j]);
    return acc * hx * hy;
}

double wp_integrand(cd psi, cd psi_prime, const UHPoint& z) {
    return (psi * std::conj(psi_prime)).real() * z.y * z.y;
}

double g_integrand(const BundleForm& w, const BundleForm& w_prime, const HField& H, const UHPoint& z) {
    if (w.terms.size() != 1 || w_prime.terms.size() != 1 || w.terms[0].comp != Component::dz ||
        w_prime.terms[0].comp != Component::dz)
        throw std::invalid_argument("g_integrand: both forms must be single dz terms");
    const auto& a = w.terms[0];
    const auto& b = w_prime.terms[0];
    cd iota = iota_pair_complex(H(z), a.matrix(z), b.matrix(z));
    // sigma ^ *sigma' = psi dz ^ i conj(psi') dzbar = 2 psi conj(psi') dx dy
    return 2.0 * (iota * a.scalar(z) * std::conj(b.scalar(z))).real();
}

double g_integrand(const QuadDiff& psi, const QuadDiff& psi_prime, Variant v, const UHPoint& z) {
    SurfaceCase c = v == Variant::block ? SurfaceCase::fuchsian_f : SurfaceCase::hitchin_F;
    return g_integrand(tangent_form(psi, v), tangent_form(psi_prime, v), frame_h_field(c), z);
}

double tangent_iota(Variant v, const UHPoint& z) {
    SurfaceCase c = v == Variant::block ? SurfaceCase::fuchsian_f : SurfaceCase::hitchin_F;
    CMat M = v == Variant::block ? phi_block_star(tangent_sl2(z.z())) : phi_irr_star(tangent_sl2(z.z()));
    return iota_pair_complex(frame_matrix(c, z).H, M, M).real();
}

double iota_closed_form(Variant v, const UHPoint& z) {
    const double x2 = z.x * z.x, y2 = z.y * z.y;
    if (v == Variant::block) return 16.0 * y2;
    double s = 1 + x2 * x2 + y2 * y2 + 2 * x2 * (1 + y2);
    return 20.0 * s * s / y2;
}

double wp_ratio_at(Variant v, const UHPoint& z) {
    QuadDiff one{{1.0}};
    return g_integrand(one, one, v, z) / wp_integrand(1.0, 1.0, z);
}

RatioReport wp_ratio_report(Variant v, const Rect& r, int grid_n) {
    if (grid_n < 1) throw std::invalid_argument("wp_ratio_report: grid_n must be >= 1");
    RatioReport rep;
    rep.min_ratio = INFINITY;
    rep.max_ratio = -INFINITY;
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            double tx = grid_n == 1 ? 0.5 : double(i) / (grid_n - 1);
            double ty = grid_n == 1 ? 0.5 : double(j) / (grid_n - 1);
            UHPoint z{r.x0 + tx * (r.x1 - r.x0), r.y0 + ty * (r.y1 - r.y0)};
            double q = wp_ratio_at(v, z);
            rep.min_ratio = std::min(rep.min_ratio, q);
            rep.max_ratio = std::max(rep.max_ratio, q);
        }
    rep.constant = rep.max_ratio - rep.min_ratio <= 1e-9 * std::max(1.0, std::abs(rep.max_ratio));
    return rep;
}

}  // namespace pseudohyp
