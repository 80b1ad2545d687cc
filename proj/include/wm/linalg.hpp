#ifndef WM_LINALG_HPP
#define WM_LINALG_HPP

#include <array>
#include <vector>

#include "wm/matrix.hpp"

namespace wm {

// Generating vector c = (c1, c2, c3, c4) of a 4x4 circulant block.
struct CoefficientBlock {
    std::array<double, 4> c{};

    bool operator==(const CoefficientBlock&) const = default;
};

// 4x4 circulant matrix: row 1 is c, each later row is the previous row
// cyclically shifted right by one.
Matrix circulant(const CoefficientBlock& block);

// Closed-form eigenvalues of C*C^T in label order (not sorted):
//   d1 = (c1+c2+c3+c4)^2
//   d2 = (c1-c2+c3-c4)^2
//   d3 = d4 = (c1-c3)^2 + (c2-c4)^2
std::array<double, 4> circulant_spectrum(const CoefficientBlock& block);

// C*C^T (symmetric PSD; equals C^T*C).
Matrix gram(const CoefficientBlock& block);

// The constant 4x4 orthogonal basis whose columns pair with the label-ordered
// spectrum: u0 * diag(circulant_spectrum(c)) * u0^T == gram(c).
const Matrix& u0();

struct SvdTriple {
    Matrix u;               // orthogonal, columns are left singular vectors
    std::vector<double> s;  // non-increasing, nonnegative
    Matrix v;               // orthogonal, columns are right singular vectors
};

// Full SVD of a square matrix. Deterministic for fixed input: the
// largest-magnitude entry of each column of U is forced nonnegative
// (first such entry on ties), with the matching column of V flipped.
SvdTriple svd(const Matrix& a);

// Singular values only (cheaper when U and V are not needed).
std::vector<double> singular_values(const Matrix& a);

} // namespace wm

#endif
