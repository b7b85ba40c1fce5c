#pragma once

#include "pseudohyp/liealg.hpp"
#include "pseudohyp/surfaces.hpp"

#include <functional>
#include <vector>

namespace pseudohyp {

enum class Component { dx, dy, dz, dzbar };

// One term psi(z) sigma (x) M(z). The scalar and matrix parts are kept apart
// because the Hodge star conjugates the scalar part only.
struct FormTerm {
    Component comp;
    std::function<cd(const UHPoint&)> scalar;
    std::function<CMat(const UHPoint&)> matrix;
};

struct BundleForm {
    std::vector<FormTerm> terms;
};

// Polynomial sum_k coeffs[k] z^k.
struct QuadDiff {
    std::vector<cd> coeffs;
    cd operator()(cd z) const;
};

enum class Variant { block, irreducible };

using HField = std::function<Mat(const UHPoint&)>;

HField frame_h_field(SurfaceCase c);

// dx -> dy, dy -> -dx, extended anti-linearly: *(psi dz) = i conj(psi) dzbar.
BundleForm hodge_star(const BundleForm& f);

// psi(z) dz (x) Phi_*([[-z, z^2], [-1, z]]).
BundleForm tangent_form(const QuadDiff& psi, Variant v);

// Matrix part conjugated by L.
BundleForm conjugate_form(const BundleForm& f, const Mat& L);

// Evaluates the (dx, dy) coefficient matrices at z.
std::pair<CMat, CMat> dxdy_coefficients(const BundleForm& f, const UHPoint& z);

// dx^dy coefficient of d f, central differences with one Richardson level.
CMat exterior_d(const BundleForm& f, const UHPoint& z, double step);

// Default step of codifferential_residual. The sharp coefficients are computed
// from ambient matrices much larger than the result, so rounding noise is
// amplified by 1/step; a step of y/100 keeps it well below 1e-6 on moderate
// windows while the Richardson/Cauchy-Riemann combination stays exact to
// O(step^6) on holomorphic data.
double codifferential_step(const UHPoint& z);

// max_j |d * (sum_t psi_t iota(M_t, E_j) sigma_t)| at z; zero iff delta f = 0.
double codifferential_residual(const BundleForm& f, const HField& H, const OrderedBasis& basis,
                               const UHPoint& z, double step = 0.0);

// Line integral along a polyline, Gauss-Legendre of the given order per segment.
CMat cocycle_integrate(const BundleForm& f, const std::vector<UHPoint>& path, int order = 16);

}  // namespace pseudohyp
