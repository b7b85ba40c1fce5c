#pragma once

#include "pseudohyp/quadspace.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace pseudohyp {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// max |X^t G + G X|; complex inputs are tested on real and imaginary parts.
double membership_residual(const QuadraticSpace& space, const Mat& X);
double membership_residual(const QuadraticSpace& space, const CMat& X);

struct OrderedBasis {
    int n = 2;
    std::vector<Mat> elements;
    std::vector<std::string> labels;
    int size() const { return static_cast<int>(elements.size()); }
};

// E1..E_r of so(2,n+1). E1..E3 are the block images of e, h/2, f; then the
// symmetric generators S_{1j}, S_{2j} (j >= 4, row-major), then the compact
// generators K_{ij} (3 <= i < j, row-major). For n = 2 this is the printed
// list with E5, E8, E9 corrected to lie in the algebra.
OrderedBasis standard_basis(int n);

// The ten n = 2 matrices exactly as printed (E5, E8, E9 fail membership).
std::vector<Mat> printed_basis_raw();

// Basis adapted to the irreducible embedding: Phi_irr_* of e, h/2, f, the
// substituted E4 and E7, and S_{14} in the last slot to restore full rank.
OrderedBasis hitchin_basis();

// Scalar product on the algebra induced by the inner product with matrix H:
// tr(M^t H N H^{-1}).
double iota_pair(const Mat& H, const Mat& M, const Mat& N);

// Hermitian extension, conjugate-linear in N.
cd iota_pair_complex(const Mat& H, const CMat& M, const CMat& N);

// Same trace with the factors in the order tr(M^t H^{-1} conj(N) H).
cd iota_pair_printed_order(const Mat& H, const CMat& M, const CMat& N);

// coeffs[j] = iota_pair_complex(H, M, E_j).
CVec sharp(const Mat& H, const CMat& M, const OrderedBasis& basis);

Mat conjugate(const Mat& L, const Mat& M);
CMat conjugate(const Mat& L, const CMat& M);

struct SignEntry {
    int source = 0;
    int target = -1;  // -1 when L E_j L^{-1} is not +-E_k
    int sign = 0;
};

std::vector<SignEntry> sign_table(const Mat& L, const OrderedBasis& basis, double tol = 1e-12);

}  // namespace pseudohyp
