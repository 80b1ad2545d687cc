#ifndef WM_METRICS_HPP
#define WM_METRICS_HPP

#include <optional>

#include "wm/image.hpp"
#include "wm/matrix.hpp"

namespace wm {

// 10 * log10(255^2 / MSE); +infinity when the images are identical.
double psnr(const Image& a, const Image& b);

struct SimilarityScore {
    double nc_raw = 0.0;                 // sum(W .* W') / (Wh * Ww)
    std::optional<double> nc_norm;       // sum(W .* W') / sqrt(sum W^2 * sum W'^2)
};

// Both correlation variants between an embedded and an extracted watermark.
// nc_norm is empty when either input has zero energy.
SimilarityScore nc(const Matrix& w, const Matrix& wp);

} // namespace wm

#endif
