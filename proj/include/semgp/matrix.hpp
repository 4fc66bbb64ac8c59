#ifndef SEMGP_MATRIX_HPP
#define SEMGP_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <vector>

namespace semgp {

/// Row-major dense matrix of doubles (n_cases x n_features).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
};

} // namespace semgp

#endif
