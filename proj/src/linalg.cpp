#include "wm/linalg.hpp"

#include <lapacke.h>

#include <cmath>

#include "wm/error.hpp"

namespace wm {

Matrix circulant(const CoefficientBlock& block) {
    Matrix m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col)
            m.at(r, col) = block.c[static_cast<size_t>(((col - r) % 4 + 4) % 4)];
    return m;
}

std::array<double, 4> circulant_spectrum(const CoefficientBlock& block) {
    const double c1 = block.c[0], c2 = block.c[1], c3 = block.c[2], c4 = block.c[3];
    const double d1 = (c1 + c2 + c3 + c4) * (c1 + c2 + c3 + c4);
    const double d2 = (c1 - c2 + c3 - c4) * (c1 - c2 + c3 - c4);
    const double d34 = (c1 - c3) * (c1 - c3) + (c2 - c4) * (c2 - c4);
    return {d1, d2, d34, d34};
}

Matrix gram(const CoefficientBlock& block) {
    Matrix c = circulant(block);
    return multiply_bt(c, c);
}

const Matrix& u0() {
    static const Matrix m = [] {
        const double h = 0.5;
        const double q = std::sqrt(2.0) / 2.0;
        Matrix u(4, 4);
        const double rows[4][4] = {
            {h, -h, 0.0, -q},
            {h, h, -q, 0.0},
            {h, -h, 0.0, q},
            {h, h, q, 0.0},
        };
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) u.at(r, c) = rows[r][c];
        return u;
    }();
    return m;
}

namespace {

void fix_column_signs(Matrix& u, Matrix& v) {
    const int n = u.rows();
    for (int j = 0; j < n; ++j) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(u.at(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (u.at(arg, j) < 0.0) {
            for (int i = 0; i < n; ++i) {
                u.at(i, j) = -u.at(i, j);
                v.at(i, j) = -v.at(i, j);
            }
        }
    }
}

} // namespace

SvdTriple svd(const Matrix& a) {
    if (!a.square() || a.rows() < 1)
        fail(ErrorCode::dimension, "svd: expected square matrix with n >= 1");
    if (!all_finite(a))
        fail(ErrorCode::numeric, "svd: input has non-finite entries");
    pin_blas_threads();

    const int n = a.rows();
    Matrix work = a;
    SvdTriple out;
    out.u = Matrix(n, n);
    out.s.assign(static_cast<size_t>(n), 0.0);
    Matrix vt(n, n);
    const lapack_int info = LAPACKE_dgesdd(
        LAPACK_ROW_MAJOR, 'A', n, n, work.data(), n, out.s.data(),
        out.u.data(), n, vt.data(), n);
    if (info != 0)
        fail(ErrorCode::numeric, "svd: LAPACK dgesdd failed to converge");
    out.v = transpose(vt);
    fix_column_signs(out.u, out.v);
    return out;
}

std::vector<double> singular_values(const Matrix& a) {
    if (!a.square() || a.rows() < 1)
        fail(ErrorCode::dimension, "singular_values: expected square matrix with n >= 1");
    if (!all_finite(a))
        fail(ErrorCode::numeric, "singular_values: input has non-finite entries");
    pin_blas_threads();

    const int n = a.rows();
    Matrix work = a;
    std::vector<double> s(static_cast<size_t>(n), 0.0);
    const lapack_int info = LAPACKE_dgesdd(
        LAPACK_ROW_MAJOR, 'N', n, n, work.data(), n, s.data(),
        nullptr, n, nullptr, n);
    if (info != 0)
        fail(ErrorCode::numeric, "singular_values: LAPACK dgesdd failed to converge");
    return s;
}

} // namespace wm
