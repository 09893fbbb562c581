#include "dctface/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dctface/error.hpp"

namespace dctface {

CoeffMatrix::CoeffMatrix(int rows_, int cols_)
    : rows(rows_), cols(cols_),
      values(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_), 0.0) {
    if (rows_ < 0 || cols_ < 0) {
        throw ImageError("matrix dimensions must be non-negative");
    }
}

CoeffMatrix::CoeffMatrix(int rows_, int cols_, std::vector<double> values_)
    : rows(rows_), cols(cols_), values(std::move(values_)) {
    if (rows_ < 0 || cols_ < 0) {
        throw ImageError("matrix dimensions must be non-negative");
    }
    if (values.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
        throw ImageError("matrix value count does not match rows*cols");
    }
}

DctBasis::DctBasis(int length) : n_(length) {
    if (length < 1) {
        throw ImageError("DCT length must be at least 1");
    }
    const double scale = std::sqrt(2.0 / n_);
    const double dc = 1.0 / std::numbers::sqrt2;
    basis_.resize(static_cast<std::size_t>(n_) * n_);
    for (int u = 0; u < n_; ++u) {
        const double a = (u == 0) ? dc : 1.0;
        for (int i = 0; i < n_; ++i) {
            basis_[static_cast<std::size_t>(u) * n_ + i] =
                scale * a * std::cos(u * (2 * i + 1) * std::numbers::pi / (2.0 * n_));
        }
    }
}

void DctBasis::forward(std::span<const double> input, std::span<double> output) const {
    for (int u = 0; u < n_; ++u) {
        const double* row = &basis_[static_cast<std::size_t>(u) * n_];
        double sum = 0.0;
        for (int i = 0; i < n_; ++i) sum += row[i] * input[i];
        output[u] = sum;
    }
}

void DctBasis::inverse(std::span<const double> coeffs, std::span<double> output) const {
    // The basis is orthonormal, so the inverse is the transpose.
    for (int i = 0; i < n_; ++i) output[i] = 0.0;
    for (int u = 0; u < n_; ++u) {
        const double* row = &basis_[static_cast<std::size_t>(u) * n_];
        const double c = coeffs[u];
        for (int i = 0; i < n_; ++i) output[i] += row[i] * c;
    }
}

std::vector<double> dct_1d(std::span<const double> signal) {
    if (signal.empty()) {
        throw ImageError("dct_1d: input is empty");
    }
    DctBasis basis(static_cast<int>(signal.size()));
    std::vector<double> out(signal.size());
    basis.forward(signal, out);
    return out;
}

std::vector<double> idct_1d(std::span<const double> coeffs) {
    if (coeffs.empty()) {
        throw ImageError("idct_1d: input is empty");
    }
    DctBasis basis(static_cast<int>(coeffs.size()));
    std::vector<double> out(coeffs.size());
    basis.inverse(coeffs, out);
    return out;
}

CoeffMatrix dct_2d(const GrayImage& img) {
    const int rows = img.height();
    const int cols = img.width();
    if (rows < 1 || cols < 1) {
        throw ImageError("dct_2d: input grid is empty");
    }
    const DctBasis row_basis(cols);
    const DctBasis col_basis(rows);

    // Rows first, then columns of the intermediate.
    CoeffMatrix tmp(rows, cols);
    for (int r = 0; r < rows; ++r) {
        row_basis.forward(std::span(img.pixels()).subspan(static_cast<std::size_t>(r) * cols, cols),
                          std::span(tmp.values).subspan(static_cast<std::size_t>(r) * cols, cols));
    }
    CoeffMatrix out(rows, cols);
    std::vector<double> column(rows), transformed(rows);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) column[r] = tmp.at(r, c);
        col_basis.forward(column, transformed);
        for (int r = 0; r < rows; ++r) out.at(r, c) = transformed[r];
    }
    return out;
}

GrayImage idct_2d(const CoeffMatrix& coeffs) {
    const int rows = coeffs.rows;
    const int cols = coeffs.cols;
    if (rows < 1 || cols < 1) {
        throw ImageError("idct_2d: input grid is empty");
    }
    const DctBasis row_basis(cols);
    const DctBasis col_basis(rows);

    CoeffMatrix tmp(rows, cols);
    std::vector<double> column(rows), restored(rows);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) column[r] = coeffs.at(r, c);
        col_basis.inverse(column, restored);
        for (int r = 0; r < rows; ++r) tmp.at(r, c) = restored[r];
    }
    std::vector<double> pixels(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        row_basis.inverse(std::span(tmp.values).subspan(static_cast<std::size_t>(r) * cols, cols),
                          std::span(pixels).subspan(static_cast<std::size_t>(r) * cols, cols));
    }
    return GrayImage(cols, rows, std::move(pixels));
}

namespace {

// Visits (row, col) cells along anti-diagonals d = row+col. Odd diagonals run
// top-right to bottom-left (row ascending), even ones the other way, which
// makes the first step from (0,0) go rightward.
template <typename Fn>
void for_each_zigzag_cell(int rows, int cols, Fn&& fn) {
    for (int d = 0; d <= rows + cols - 2; ++d) {
        const int r_lo = std::max(0, d - cols + 1);
        const int r_hi = std::min(d, rows - 1);
        if (d % 2 == 1) {
            for (int r = r_lo; r <= r_hi; ++r) fn(r, d - r);
        } else {
            for (int r = r_hi; r >= r_lo; --r) fn(r, d - r);
        }
    }
}

}  // namespace

CoeffVector zigzag_scan(const CoeffMatrix& m) {
    if (m.rows < 1 || m.cols < 1) {
        throw ImageError("zigzag_scan: matrix is empty");
    }
    CoeffVector out;
    out.source_rows = m.rows;
    out.source_cols = m.cols;
    out.values.reserve(m.values.size());
    for_each_zigzag_cell(m.rows, m.cols,
                         [&](int r, int c) { out.values.push_back(m.at(r, c)); });
    return out;
}

CoeffMatrix inverse_zigzag(const CoeffVector& v, int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw ImageError("inverse_zigzag: target shape is empty");
    }
    if (v.values.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw ImageError("inverse_zigzag: vector length " + std::to_string(v.values.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    CoeffMatrix out(rows, cols);
    std::size_t i = 0;
    for_each_zigzag_cell(rows, cols, [&](int r, int c) { out.at(r, c) = v.values[i++]; });
    return out;
}

CoeffVector truncate(const CoeffVector& v, int k) {
    if (k < 1 || k > v.kept()) {
        throw ImageError("truncate: k=" + std::to_string(k) + " out of range 1.." +
                         std::to_string(v.kept()));
    }
    CoeffVector out;
    out.source_rows = v.source_rows;
    out.source_cols = v.source_cols;
    out.values.assign(v.values.begin(), v.values.begin() + k);
    return out;
}

}  // namespace dctface
