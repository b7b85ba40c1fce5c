#include "pseudohyp/forms.hpp"

#include "pseudohyp/metric.hpp"

#include <stdexcept>

namespace pseudohyp {

namespace {

const cd I(0.0, 1.0);

template <class F>
auto richardson_partial(const F& f, const UHPoint& z, double h, bool along_x) {
    auto central = [&](double s) {
        UHPoint a = along_x ? UHPoint{z.x + s, z.y} : UHPoint{z.x, z.y + s};
        UHPoint b = along_x ? UHPoint{z.x - s, z.y} : UHPoint{z.x, z.y - s};
        return ((f(a) - f(b)) / (2 * s)).eval();
    };
    auto coarse = central(h);
    auto fine = central(h / 2);
    return ((4.0 * fine - coarse) / 3.0).eval();
}

}  // namespace

cd QuadDiff::operator()(cd z) const {
    cd acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double codifferential_step(const UHPoint& z) { return 1e-2 * z.y; }

HField frame_h_field(SurfaceCase c) {
    return [c](const UHPoint& z) { return frame_matrix(c, z).H; };
}

BundleForm hodge_star(const BundleForm& f) {
    BundleForm out;
    for (const auto& t : f.terms) {
        auto s = t.scalar;
        switch (t.comp) {
            case Component::dx:
                out.terms.push_back({Component::dy, [s](const UHPoint& z) { return std::conj(s(z)); }, t.matrix});
                break;
            case Component::dy:
                out.terms.push_back({Component::dx, [s](const UHPoint& z) { return -std::conj(s(z)); }, t.matrix});
                break;
            case Component::dz:
                out.terms.push_back({Component::dzbar, [s](const UHPoint& z) { return I * std::conj(s(z)); }, t.matrix});
                break;
            case Component::dzbar:
                out.terms.push_back({Component::dz, [s](const UHPoint& z) { return -I * std::conj(s(z)); }, t.matrix});
                break;
        }
    }
    return out;
}

BundleForm tangent_form(const QuadDiff& psi, Variant v) {
    FormTerm t;
    t.comp = Component::dz;
    t.scalar = [psi](const UHPoint& z) { return psi(z.z()); };
    if (v == Variant::block)
        t.matrix = [](const UHPoint& z) { return phi_block_star(tangent_sl2(z.z())); };
    else
        t.matrix = [](const UHPoint& z) { return phi_irr_star(tangent_sl2(z.z())); };
    return {{t}};
}

BundleForm conjugate_form(const BundleForm& f, const Mat& L) {
    BundleForm out = f;
    for (auto& t : out.terms) {
        auto m = t.matrix;
        t.matrix = [m, L](const UHPoint& z) { return conjugate(L, m(z)); };
    }
    return out;
}

std::pair<CMat, CMat> dxdy_coefficients(const BundleForm& f, const UHPoint& z) {
    CMat p, q;
    for (const auto& t : f.terms) {
        CMat M = t.scalar(z) * t.matrix(z);
        if (p.size() == 0) {
            p = CMat::Zero(M.rows(), M.cols());
            q = CMat::Zero(M.rows(), M.cols());
        }
        switch (t.comp) {
            case Component::dx: p += M; break;
            case Component::dy: q += M; break;
            case Component::dz: p += M; q += I * M; break;
            case Component::dzbar: p += M; q -= I * M; break;
        }
    }
    return {p, q};
}

CMat exterior_d(const BundleForm& f, const UHPoint& z, double step) {
    if (step <= 0.0) throw std::invalid_argument("exterior_d: step must be positive");
    if (f.terms.empty()) return CMat();
    auto P = [&](const UHPoint& w) { return dxdy_coefficients(f, w).first; };
    auto Q = [&](const UHPoint& w) { return dxdy_coefficients(f, w).second; };
    return richardson_partial(Q, z, step, true) - richardson_partial(P, z, step, false);
}

double codifferential_residual(const BundleForm& f, const HField& H, const OrderedBasis& basis,
                               const UHPoint& z, double step) {
    if (f.terms.empty()) return 0.0;
    if (step <= 0.0) step = codifferential_step(z);
    // (p_j, q_j): dx, dy coefficients of the j-th component of #f
    auto sharp_pq = [&](const UHPoint& w) {
        Mat Hw = H(w);
        CVec p = CVec::Zero(basis.size()), q = CVec::Zero(basis.size());
        for (const auto& t : f.terms) {
            CVec c = t.scalar(w) * sharp(Hw, t.matrix(w), basis);
            switch (t.comp) {
                case Component::dx: p += c; break;
                case Component::dy: q += c; break;
                case Component::dz: p += c; q += I * c; break;
                case Component::dzbar: p += c; q -= I * c; break;
            }
        }
        return std::make_pair(p, q);
    };
    // *(p dx + q dy) = -conj(q) dx + conj(p) dy
    auto Pstar = [&](const UHPoint& w) { return CVec(-sharp_pq(w).second.conjugate()); };
    auto Qstar = [&](const UHPoint& w) { return CVec(sharp_pq(w).first.conjugate()); };
    CVec d = richardson_partial(Qstar, z, step, true) - richardson_partial(Pstar, z, step, false);
    return d.cwiseAbs().maxCoeff();
}

CMat cocycle_integrate(const BundleForm& f, const std::vector<UHPoint>& path, int order) {
    if (path.empty()) throw std::invalid_argument("cocycle_integrate: empty path");
    if (f.terms.empty()) return CMat();
    GaussRule g = gauss_legendre(order);
    CMat acc;
    for (size_t s = 0; s + 1 < path.size(); ++s) {
        const UHPoint a = path[s], b = path[s + 1];
        const double dx = b.x - a.x, dy = b.y - a.y;
        for (size_t k = 0; k < g.nodes.size(); ++k) {
            double t = 0.5 * (g.nodes[k] + 1.0);
            auto [p, q] = dxdy_coefficients(f, UHPoint{a.x + t * dx, a.y + t * dy});
            CMat contrib = 0.5 * g.weights[k] * (p * dx + q * dy);
            if (acc.size() == 0) acc = CMat::Zero(contrib.rows(), contrib.cols());
            acc += contrib;
        }
    }
    if (acc.size() == 0) {
        auto [p, q] = dxdy_coefficients(f, path.front());
        acc = CMat::Zero(p.rows(), p.cols());
    }
    return acc;
}

}  // namespace pseudohyp
