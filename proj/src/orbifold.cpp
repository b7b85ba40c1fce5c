#include "pseudohyp/orbifold.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pseudohyp {

namespace {

Mat diag_of(const std::vector<int>& s) {
    Vec d(s.size());
    for (size_t i = 0; i < s.size(); ++i) d(i) = s[i];
    return d.asDiagonal();
}

bool is_special_identity_component(const QuadraticSpace& S, const Mat& D) {
    return is_isometry(S, D, 1e-12) && in_identity_component(S, D, 1e-12);
}

}  // namespace

std::string shape_name(ShapeLabel l) {
    switch (l) {
        case ShapeLabel::so22xso1: return "so22xso1";
        case ShapeLabel::so21xso2: return "so21xso2";
        case ShapeLabel::so21xso1xso1: return "so21xso1xso1";
        case ShapeLabel::so23xso1k: return "so23xso1k";
    }
    return "?";
}

ShapeLabel parse_shape(const std::string& s) {
    for (auto l : {ShapeLabel::so22xso1, ShapeLabel::so21xso2, ShapeLabel::so21xso1xso1, ShapeLabel::so23xso1k})
        if (shape_name(l) == s) return l;
    throw std::invalid_argument("unknown shape: " + s);
}

std::vector<ShapeBlock> shape_blocks(const SubgroupShape& s) {
    switch (s.label) {
        case ShapeLabel::so22xso1:
        case ShapeLabel::so21xso2:
        case ShapeLabel::so21xso1xso1:
            if (s.n != 2) throw std::invalid_argument(shape_name(s.label) + " requires n = 2");
            break;
        case ShapeLabel::so23xso1k:
            if (s.n < 2) throw std::invalid_argument("so23xso1k requires n >= 2");
            break;
    }
    switch (s.label) {
        case ShapeLabel::so22xso1: return {{0, {1, 1, -1, -1}}, {4, {-1}}};
        case ShapeLabel::so21xso2: return {{0, {1, 1, -1}}, {3, {-1, -1}}};
        case ShapeLabel::so21xso1xso1: return {{0, {1, 1, -1}}, {3, {-1}}, {4, {-1}}};
        case ShapeLabel::so23xso1k: {
            std::vector<ShapeBlock> b{{0, {1, 1, -1, -1, -1}}};
            for (int k = 0; k < s.n - 2; ++k) b.push_back({5 + k, {-1}});
            return b;
        }
    }
    return {};
}

std::string group_type_for_order(size_t order) {
    int k = 0;
    while ((size_t(1) << k) < order) ++k;
    if (k == 0) return "trivial";
    if (k == 1) return "Z2";
    if (k == 2) return "Z2xZ2";
    return "(Z2)^" + std::to_string(k);
}

namespace {

// Sign vectors constant on every block, filtered to det 1 and SO_0.
std::vector<Mat> structural_elements(const SubgroupShape& s) {
    auto blocks = shape_blocks(s);
    const int dim = s.n + 3;
    const QuadraticSpace S = standard_space(s.n);
    const int nb = static_cast<int>(blocks.size());
    std::vector<Mat> out;
    for (int mask = 0; mask < (1 << nb); ++mask) {
        std::vector<int> d(dim);
        for (int b = 0; b < nb; ++b)
            for (size_t i = 0; i < blocks[b].signature.size(); ++i)
                d[blocks[b].start + i] = (mask >> b) & 1 ? -1 : 1;
        Mat D = diag_of(d);
        if (is_special_identity_component(S, D)) out.push_back(D);
    }
    return out;
}

}  // namespace

CentralizerResult centralizer(const SubgroupShape& s) {
    CentralizerResult r;
    r.elements = structural_elements(s);
    for (const auto& b : shape_blocks(s))
        if (b.signature.size() == 2 && b.signature[0] == b.signature[1]) r.exhaustive = false;
    r.group_type = group_type_for_order(r.elements.size());
    r.quotient_size = quotient_size(s);
    return r;
}

Mat random_block_element(const SubgroupShape& s, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 0.5);
    const int dim = s.n + 3;
    Mat out = Mat::Identity(dim, dim);
    for (const auto& b : shape_blocks(s)) {
        const int m = static_cast<int>(b.signature.size());
        if (m == 1) continue;  // SO(1)
        Mat A = Mat::Zero(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                A(i, j) = g(rng);
                A(j, i) = -A(i, j);
            }
        Mat X = diag_of(b.signature) * A;  // X^t G + G X = A^t + A = 0
        out.block(b.start, b.start, m, m) = X.exp();
    }
    return out;
}

std::vector<Mat> centralizer_bruteforce(const SubgroupShape& s, int samples, std::mt19937_64& rng) {
    const int dim = s.n + 3;
    const QuadraticSpace S = standard_space(s.n);
    std::vector<Mat> probes;
    for (int k = 0; k < samples; ++k) probes.push_back(random_block_element(s, rng));
    std::vector<Mat> out;
    for (long mask = 0; mask < (1L << dim); ++mask) {
        std::vector<int> d(dim);
        for (int i = 0; i < dim; ++i) d[i] = (mask >> i) & 1 ? -1 : 1;
        Mat D = diag_of(d);
        bool ok = std::all_of(probes.begin(), probes.end(), [&](const Mat& g) {
            return (D * g - g * D).cwiseAbs().maxCoeff() <= 1e-12;
        });
        if (ok && is_special_identity_component(S, D)) out.push_back(D);
    }
    return out;
}

std::vector<Mat> center(int n) {
    const int dim = n + 3;
    const QuadraticSpace S = standard_space(n);
    std::vector<Mat> out{Mat::Identity(dim, dim)};
    Mat minus = -Mat::Identity(dim, dim);
    if (is_special_identity_component(S, minus)) out.push_back(minus);
    return out;
}

int quotient_size(const SubgroupShape& s) {
    auto elems = structural_elements(s);
    int in_center = 0;
    for (const Mat& c : center(s.n))
        for (const Mat& e : elems)
            if (c == e) ++in_center;
    return static_cast<int>(elems.size()) / std::max(1, in_center);
}

Mat matrix_A() { return diag_of({-1, -1, -1, -1, 1}); }
Mat matrix_B() { return diag_of({1, 1, 1, -1, -1}); }
Mat matrix_C() { return diag_of({-1, -1, -1, 1, -1}); }
Mat matrix_Q() { return diag_of({1, 1, 1, 1, -1}); }

namespace {

// H-field after acting by L: unchanged for L in SO_0(2,3), L^t H L otherwise.
HField transformed_h_field(const Mat& L, SurfaceCase c) {
    const QuadraticSpace S = standard_space(2);
    Mat G = L.transpose() * S.gram * L - S.gram;
    if (G.cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("L is not an isometry of R^{2,3}");
    HField base = frame_h_field(c);
    bool identity_component = std::abs(L.determinant() - 1.0) <= 1e-10 && in_identity_component(S, L);
    if (identity_component) return base;
    return [base, L](const UHPoint& z) { return Mat(L.transpose() * base(z) * L); };
}

}  // namespace

double invariance_suite(const Mat& L, SurfaceCase c, int samples, std::mt19937_64& rng) {
    HField Hq = transformed_h_field(L, c);
    HField H = frame_h_field(c);
    const OrderedBasis B = standard_basis(2);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.2, 4.0);
    std::normal_distribution<double> g(0.0, 1.0);
    auto random_element = [&]() {
        Mat M = Mat::Zero(5, 5);
        for (const Mat& E : B.elements) M += g(rng) * E;
        return M;
    };
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        UHPoint z{ux(rng), uy(rng)};
        Mat M = random_element(), N = random_element();
        double base = iota_pair(H(z), M, N);
        double moved = iota_pair(Hq(z), conjugate(L, M), conjugate(L, N));
        worst = std::max(worst, std::abs(moved - base) / std::max(1.0, std::abs(base)));
    }
    return worst;
}

double conjugated_harmonicity(const Mat& L, SurfaceCase c, const QuadDiff& psi, const UHPoint& z) {
    Variant v = c == SurfaceCase::fuchsian_f ? Variant::block : Variant::irreducible;
    BundleForm w = conjugate_form(tangent_form(psi, v), L);
    return codifferential_residual(w, transformed_h_field(L, c), standard_basis(2), z);
}

}  // namespace pseudohyp
