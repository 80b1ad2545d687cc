#ifndef WM_CODEC_HPP
#define WM_CODEC_HPP

#include <vector>

#include "wm/image.hpp"
#include "wm/watermark.hpp"

namespace wm {

inline constexpr double kDefaultAlpha = 0.06;
inline constexpr int kDefaultBlockCount = 1;
inline constexpr double kDefaultDetectTol = 0.05;
inline constexpr double kDetectEpsilon = 1e-9;

// Everything detection and evaluation need. Detection itself reads only
// (alpha, s_prefix); the coefficient blocks ride along so the extracted mark
// can be compared against the embedded one. A key parsed in detect-only mode
// has empty blocks.
struct WatermarkKey {
    double alpha = kDefaultAlpha;
    int block_count = 0;
    int image_side = 0;
    std::vector<double> s_prefix;          // first 4k host singular values
    std::vector<CoefficientBlock> blocks;  // empty in detect-only keys
    bool y_monotone_warning = false;

    bool has_blocks() const { return !blocks.empty(); }
};

struct EmbedResult {
    Image watermarked;  // unquantized
    WatermarkKey key;
};

// Watermarks a normalized host: Y_i = S_i + alpha * dprime_i, A* = U diag(Y) V^T.
// Sets key.y_monotone_warning when Y is not strictly decreasing (a recomputed
// SVD of A* then reorders the values and detection indexes drift off the key).
EmbedResult embed(const Image& host, const WatermarkSpec& spec, double alpha);

struct DetectionReport {
    std::vector<double> x;         // (S*_i - S_i) / alpha, length 4k
    std::vector<bool> block_pass;  // per-block x_{4i-1} == x_{4i} tolerance test
    bool detected = false;
};

// Blind detection from (image, key) only. Block i passes when
// |x_{4i-1} - x_{4i}| <= tol * max(|x_{4i-1}|, |x_{4i}|, 1e-9).
DetectionReport detect(const Image& img, const WatermarkKey& key, double tol = kDefaultDetectTol);

// Blind extraction: block i of W* is u0 * diag(x_{4i-3..4i}) * u0^T.
Matrix extract(const Image& img, const WatermarkKey& key);

// Same layout from an already-computed x vector (saves the second SVD when a
// detection report is at hand).
Matrix extract_from_x(const std::vector<double>& x, int image_side);

// W assembled from the key's own blocks, for similarity scoring.
Matrix key_watermark(const WatermarkKey& key);

} // namespace wm

#endif
