#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace ewl {

// Dense row-major matrix of 64-bit reals.
struct Tensor2 {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    Tensor2() = default;
    Tensor2(int r, int c) : rows(r), cols(c), values(static_cast<size_t>(r) * c, 0.0) {}

    double &operator()(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }
    double *row(int r) { return values.data() + static_cast<size_t>(r) * cols; }
    const double *row(int r) const { return values.data() + static_cast<size_t>(r) * cols; }
};

// y = W x + b
inline void affine_apply(const Tensor2 &W, const std::vector<double> &b, const double *x,
                         double *y) {
    for (int r = 0; r < W.rows; ++r) {
        double acc = b[r];
        const double *wr = W.row(r);
        for (int c = 0; c < W.cols; ++c) acc += wr[c] * x[c];
        y[r] = acc;
    }
}

// x_grad += W^T y_grad; accumulates weight/bias gradients.
inline void affine_backward(const Tensor2 &W, const double *x, const double *y_grad,
                            Tensor2 &W_grad, std::vector<double> &b_grad, double *x_grad) {
    for (int r = 0; r < W.rows; ++r) {
        double g = y_grad[r];
        b_grad[r] += g;
        const double *wr = W.row(r);
        double *gr = W_grad.row(r);
        for (int c = 0; c < W.cols; ++c) {
            gr[c] += g * x[c];
            if (x_grad) x_grad[c] += wr[c] * g;
        }
    }
}

inline void check_finite(const std::vector<double> &v, const char *what) {
    for (double d : v)
        if (!std::isfinite(d)) throw std::runtime_error(std::string("non-finite value in ") + what);
}

}  // namespace ewl
