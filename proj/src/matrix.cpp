#include "wm/matrix.hpp"

#include <cblas.h>
#include <cmath>
#include <mutex>

#include "wm/error.hpp"

extern "C" void openblas_set_num_threads(int);

namespace wm {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {
    if (rows < 0 || cols < 0)
        fail(ErrorCode::argument, "matrix dimensions must be nonnegative");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

void pin_blas_threads() {
    static std::once_flag flag;
    std::call_once(flag, [] { openblas_set_num_threads(1); });
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        fail(ErrorCode::dimension, "multiply: inner dimensions differ");
    pin_blas_threads();
    Matrix out(a.rows(), b.cols());
    if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return out;
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans,
                a.rows(), b.cols(), a.cols(),
                1.0, a.data(), a.cols(), b.data(), b.cols(),
                0.0, out.data(), out.cols());
    return out;
}

Matrix multiply_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        fail(ErrorCode::dimension, "multiply_bt: inner dimensions differ");
    pin_blas_threads();
    Matrix out(a.rows(), b.rows());
    if (a.rows() == 0 || b.rows() == 0 || a.cols() == 0) return out;
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans,
                a.rows(), b.rows(), a.cols(),
                1.0, a.data(), a.cols(), b.data(), b.cols(),
                0.0, out.data(), out.cols());
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            out.at(c, r) = m.at(r, c);
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorCode::dimension, "max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

double max_abs(const Matrix& m) {
    double worst = 0.0;
    for (size_t i = 0; i < m.size(); ++i)
        worst = std::max(worst, std::abs(m.data()[i]));
    return worst;
}

bool all_finite(const Matrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        if (!std::isfinite(m.data()[i])) return false;
    return true;
}

} // namespace wm
