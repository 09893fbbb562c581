#pragma once

#include <span>
#include <vector>

#include "dctface/image.hpp"

namespace dctface {

// Convention identifiers baked into this build. They are stamped into gallery
// files so templates produced under a different convention are rejected
// instead of silently misread.
inline constexpr const char* kDctConventionId = "dct2-orthonormal-v1";
inline constexpr const char* kZigzagConventionId = "zigzag-jpeg-right-first-v1";

// 2D coefficient matrix (or any real-valued grid), row-major.
struct CoeffMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    CoeffMatrix() = default;
    CoeffMatrix(int rows, int cols);  // zero-filled
    CoeffMatrix(int rows, int cols, std::vector<double> values);

    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(const CoeffMatrix&) const = default;
};

// Zigzag-serialized coefficients. values.size() is the kept count; the source
// matrix shape rides along so vectors from different region shapes cannot be
// compared by accident.
struct CoeffVector {
    std::vector<double> values;
    int source_rows = 0;
    int source_cols = 0;

    int kept() const noexcept { return static_cast<int>(values.size()); }

    bool operator==(const CoeffVector&) const = default;
};

// Orthonormal DCT-II basis for one transform length. Read-only once built and
// safe to share across threads. basis(u, i) = sqrt(2/N) * A(u) * cos(u(2i+1)pi/2N)
// with A(0) = 1/sqrt(2), A(u) = 1 otherwise.
class DctBasis {
public:
    explicit DctBasis(int length);

    int length() const noexcept { return n_; }
    void forward(std::span<const double> input, std::span<double> output) const;
    void inverse(std::span<const double> coeffs, std::span<double> output) const;

private:
    int n_;
    std::vector<double> basis_;  // basis_[u * n_ + i]
};

std::vector<double> dct_1d(std::span<const double> signal);
std::vector<double> idct_1d(std::span<const double> coeffs);

// Separable row/column application of the 1D transform.
CoeffMatrix dct_2d(const GrayImage& img);
GrayImage idct_2d(const CoeffMatrix& coeffs);

// Anti-diagonal traversal, first step rightward from (0,0), direction
// alternating per diagonal (JPEG convention), clipped to the matrix bounds
// for non-square shapes.
CoeffVector zigzag_scan(const CoeffMatrix& m);
CoeffMatrix inverse_zigzag(const CoeffVector& v, int rows, int cols);

// Keeps the first k zigzag coefficients; source dimensions are preserved.
CoeffVector truncate(const CoeffVector& v, int k);

}  // namespace dctface
