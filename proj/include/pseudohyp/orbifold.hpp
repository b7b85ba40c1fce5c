#pragma once

#include "pseudohyp/forms.hpp"

#include <random>
#include <string>
#include <vector>

namespace pseudohyp {

enum class ShapeLabel { so22xso1, so21xso2, so21xso1xso1, so23xso1k };

struct SubgroupShape {
    ShapeLabel label;
    int n;
};

std::string shape_name(ShapeLabel l);
ShapeLabel parse_shape(const std::string& s);

struct ShapeBlock {
    int start;
    std::vector<int> signature;  // diagonal of the form restricted to the block
};

// Throws std::invalid_argument when the shape does not fit n.
std::vector<ShapeBlock> shape_blocks(const SubgroupShape& s);

struct CentralizerResult {
    std::vector<Mat> elements;
    std::string group_type;
    int quotient_size = 1;
    // false when the shape has an SO(2) factor: the true centralizer then
    // has a continuous part that the diagonal enumeration cannot see.
    bool exhaustive = true;
};

// Diagonal +-1 matrices, constant on each block, of det 1 and in SO_0.
CentralizerResult centralizer(const SubgroupShape& s);

// Same set obtained by commuting all 2^{n+3} candidates with random block
// elements; used to cross-check the structural rule.
std::vector<Mat> centralizer_bruteforce(const SubgroupShape& s, int samples, std::mt19937_64& rng);

// Random element of the block subgroup (exp of a random block Lie element).
Mat random_block_element(const SubgroupShape& s, std::mt19937_64& rng);

std::vector<Mat> center(int n);
int quotient_size(const SubgroupShape& s);

std::string group_type_for_order(size_t order);

// Named diagonal matrices of the n = 2 discussion.
Mat matrix_A();
Mat matrix_B();
Mat matrix_C();
Mat matrix_Q();

// Max over samples of |iota_{H'}(L M L^-1, L N L^-1) - iota_H(M, N)| / max(1, |iota_H(M, N)|)
// with H' = H for L in SO_0(2,3) and H' = L^t H L otherwise.
double invariance_suite(const Mat& L, SurfaceCase c, int samples, std::mt19937_64& rng);

// Codifferential residual of the L-conjugated tangent form psi dz (x) ...,
// using the same transformation rule for H as invariance_suite.
double conjugated_harmonicity(const Mat& L, SurfaceCase c, const QuadDiff& psi, const UHPoint& z);

}  // namespace pseudohyp
