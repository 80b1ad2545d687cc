#include "wm/metrics.hpp"

#include <cmath>
#include <limits>

#include "wm/error.hpp"

namespace wm {

double psnr(const Image& a, const Image& b) {
    if (a.width() != b.width() || a.height() != b.height())
        fail(ErrorCode::dimension, "psnr: images differ in size");
    if (a.empty()) fail(ErrorCode::argument, "psnr: empty images");
    double sum = 0.0;
    for (size_t i = 0; i < a.pixel_count(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(a.pixel_count());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

SimilarityScore nc(const Matrix& w, const Matrix& wp) {
    if (w.rows() != wp.rows() || w.cols() != wp.cols())
        fail(ErrorCode::dimension, "nc: matrices differ in size");
    if (w.size() == 0) fail(ErrorCode::argument, "nc: empty matrices");

    double dot = 0.0, ew = 0.0, ewp = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        dot += w.data()[i] * wp.data()[i];
        ew += w.data()[i] * w.data()[i];
        ewp += wp.data()[i] * wp.data()[i];
    }
    SimilarityScore score;
    score.nc_raw = dot / static_cast<double>(w.size());
    if (ew > 0.0 && ewp > 0.0) score.nc_norm = dot / std::sqrt(ew * ewp);
    return score;
}

} // namespace wm
