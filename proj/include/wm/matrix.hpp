#ifndef WM_MATRIX_HPP
#define WM_MATRIX_HPP

#include <vector>

namespace wm {

// Dense row-major matrix of doubles. Sized at construction, immutable shape.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0);

    static Matrix identity(int n);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    size_t size() const noexcept { return data_.size(); }

    bool operator==(const Matrix& other) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// a * b via BLAS.
Matrix multiply(const Matrix& a, const Matrix& b);
// a * b^T via BLAS.
Matrix multiply_bt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

// max_ij |a_ij - b_ij|; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& m);

bool all_finite(const Matrix& m);

// Pins the BLAS/LAPACK backend to one thread so results are reproducible
// run-to-run regardless of the machine's core count. Called lazily by svd();
// safe to call more than once.
void pin_blas_threads();

} // namespace wm

#endif
