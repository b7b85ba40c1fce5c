#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace pseudohyp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Raised when a null or near-null direction shows up where a
// non-degenerate one is required (orthonormalization, singular H, ...).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadraticSpace {
    int dim = 0;
    Mat gram;
    int p = 0;  // positive directions
    int q = 0;  // negative directions
};

// Builds a space from a symmetric Gram matrix; the signature is read off
// the eigenvalues. Throws on degenerate gram.
QuadraticSpace make_space(const Mat& gram);

// R^{2,n+1} with diag(1,1,-1,...,-1).
QuadraticSpace standard_space(int n);

// Twisted models on degree-2 and degree-4 binary forms.
QuadraticSpace b2_space();
QuadraticSpace b4_space();

double inner(const QuadraticSpace& space, const Vec& x, const Vec& y);

bool is_isometry(const QuadraticSpace& space, const Mat& M, double tol = 1e-10);

// Component test for O(p,q). For non-diagonal grams the matrix is first
// moved to a diagonal congruent basis with positives first.
bool in_identity_component(const QuadraticSpace& space, const Mat& M, double tol = 1e-10);

// Gram-Schmidt with respect to the indefinite form. expected_signs[i] is
// the required sign of inner(v_i, v_i) after projection.
std::vector<Vec> signed_orthonormalize(const QuadraticSpace& space,
                                       const std::vector<Vec>& vectors,
                                       const std::vector<int>& expected_signs,
                                       double tol = 1e-8);

}  // namespace pseudohyp
