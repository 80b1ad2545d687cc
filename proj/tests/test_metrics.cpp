#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wm/error.hpp"
#include "wm/image.hpp"
#include "wm/metrics.hpp"

using wm::Image;
using wm::Matrix;

TEST_CASE("psnr sentinel and exact values") {
    const Image a(8, 8, 100.0);
    CHECK(std::isinf(wm::psnr(a, a)));

    const Image black(8, 8, 0.0);
    const Image white(8, 8, 255.0);
    CHECK(wm::psnr(black, white) == doctest::Approx(0.0).epsilon(1e-12));

    // one pixel off by 16 in a 4x4 image: MSE = 256/16
    Image b(4, 4, 50.0);
    Image c = b;
    c.at(2, 1) = 66.0;
    const double want = 10.0 * std::log10(255.0 * 255.0 * 16.0 / 256.0);
    CHECK(wm::psnr(b, c) == doctest::Approx(want).epsilon(1e-12));
    CHECK(wm::psnr(c, b) == wm::psnr(b, c));
}

TEST_CASE("psnr of quantization stays above the analytic floor") {
    std::mt19937_64 rng(3);
    Image img(32, 32);
    for (size_t i = 0; i < img.pixel_count(); ++i)
        img.data()[i] = 255.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    // max rounding error 0.5 -> MSE <= 0.25 -> PSNR >= 10 log10(255^2 / 0.25)
    const double floor = 10.0 * std::log10(255.0 * 255.0 / 0.25);
    CHECK(wm::psnr(img, wm::quantize(img)) >= floor);
    CHECK(floor >= 48.0);
}

TEST_CASE("psnr dimension mismatch") {
    const Image a(4, 4, 0.0);
    const Image b(4, 5, 0.0);
    CHECK_THROWS_AS((void)wm::psnr(a, b), wm::Error);
}

TEST_CASE("nc of identical, scaled, negated, and orthogonal inputs") {
    std::mt19937_64 rng(5);
    Matrix w(6, 6);
    for (size_t i = 0; i < w.size(); ++i)
        w.data()[i] = -1.0 + 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);

    CHECK(*wm::nc(w, w).nc_norm == doctest::Approx(1.0).epsilon(1e-12));

    Matrix scaled = w;
    for (size_t i = 0; i < scaled.size(); ++i) scaled.data()[i] *= 3.5;
    CHECK(*wm::nc(w, scaled).nc_norm == doctest::Approx(1.0).epsilon(1e-12));

    Matrix negated = w;
    for (size_t i = 0; i < negated.size(); ++i) negated.data()[i] = -negated.data()[i];
    CHECK(*wm::nc(w, negated).nc_norm == doctest::Approx(-1.0).epsilon(1e-12));

    Matrix disjoint(6, 6);
    Matrix left(6, 6);
    left.at(0, 0) = 2.0;
    disjoint.at(5, 5) = 7.0;
    CHECK(*wm::nc(left, disjoint).nc_norm == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("literal raw correlation of all-ones 2x2 is 1") {
    const Matrix ones(2, 2, 1.0);
    CHECK(wm::nc(ones, ones).nc_raw == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-energy input leaves nc_norm undefined but keeps nc_raw") {
    const Matrix zero(3, 3);
    Matrix w(3, 3);
    w.at(1, 1) = 4.0;
    const auto score = wm::nc(w, zero);
    CHECK(score.nc_raw == 0.0);
    CHECK(!score.nc_norm.has_value());
}

TEST_CASE("nc dimension mismatch") {
    CHECK_THROWS_AS((void)wm::nc(Matrix(2, 2), Matrix(3, 3)), wm::Error);
}
