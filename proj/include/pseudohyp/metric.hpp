#pragma once

#include "pseudohyp/forms.hpp"

#include <functional>
#include <vector>

namespace pseudohyp {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

struct Rect {
    double x0, x1, y0, y1;
};

// Tensor-product Gauss-Legendre over a chart rectangle.
double quadrature(const std::function<double(double, double)>& density, const Rect& r, int order);

// Re[psi conj(psi')] y^2.
double wp_integrand(cd psi, cd psi_prime, const UHPoint& z);

// Density against dx dy of g(psi dz (x) M, psi' dz (x) M') at z; both forms
// must be single dz terms.
double g_integrand(const BundleForm& w, const BundleForm& w_prime, const HField& H, const UHPoint& z);

// Convenience: tangent forms of the given variant with their frame H-field.
double g_integrand(const QuadDiff& psi, const QuadDiff& psi_prime, Variant v, const UHPoint& z);

// iota of the tangent family with itself, via frames.
double tangent_iota(Variant v, const UHPoint& z);

// Printed closed forms: 16 y^2 and 20 (1 + x^4 + y^4 + 2x^2(1+y^2))^2 / y^2.
double iota_closed_form(Variant v, const UHPoint& z);

struct RatioReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool constant = false;
};

RatioReport wp_ratio_report(Variant v, const Rect& r, int grid_n);

// g/wp for psi = psi' = 1 at z.
double wp_ratio_at(Variant v, const UHPoint& z);

}  // namespace pseudohyp
