#include "wm/codec.hpp"

#include <cmath>

#include "wm/error.hpp"

namespace wm {

namespace {

void check_key(const WatermarkKey& key) {
    if (key.alpha <= 0.0) fail(ErrorCode::argument, "key: alpha must be positive");
    if (key.block_count < 1) fail(ErrorCode::argument, "key: block count must be >= 1");
    if (key.image_side < 4 * key.block_count)
        fail(ErrorCode::argument, "key: too many blocks for image side");
    if (key.s_prefix.size() != static_cast<size_t>(4 * key.block_count))
        fail(ErrorCode::argument, "key: singular-value prefix has wrong length");
}

std::vector<double> detection_x(const Image& img, const WatermarkKey& key) {
    check_key(key);
    if (img.width() != img.height() || img.width() != key.image_side)
        fail(ErrorCode::dimension, "image side does not match key");
    const std::vector<double> s_star = singular_values(image_matrix(img));
    std::vector<double> x(key.s_prefix.size());
    for (size_t i = 0; i < x.size(); ++i)
        x[i] = (s_star[i] - key.s_prefix[i]) / key.alpha;
    return x;
}

} // namespace

EmbedResult embed(const Image& host, const WatermarkSpec& spec, double alpha) {
    if (host.empty()) fail(ErrorCode::argument, "embed: empty host");
    if (host.width() != host.height() || host.width() % 4 != 0)
        fail(ErrorCode::dimension, "embed: host must be square with side divisible by 4");
    if (spec.image_side != host.width())
        fail(ErrorCode::dimension, "embed: spec sized for a different image side");
    if (alpha <= 0.0) fail(ErrorCode::argument, "embed: alpha must be positive");
    const int k = static_cast<int>(spec.blocks.size());
    if (k < 1) fail(ErrorCode::argument, "embed: no blocks");
    if (4 * k > host.width()) fail(ErrorCode::argument, "embed: too many blocks");

    const SvdTriple host_svd = svd(image_matrix(host));
    const std::vector<double> dprime = watermark_singulars(spec);

    const int n = host.width();
    std::vector<double> y(host_svd.s);
    for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] += alpha * dprime[static_cast<size_t>(i)];

    bool warning = false;
    for (int i = 0; i + 1 < n; ++i)
        if (!(y[static_cast<size_t>(i)] > y[static_cast<size_t>(i + 1)])) warning = true;

    // A* = (U * diag(Y)) * V^T
    Matrix u_scaled = host_svd.u;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) u_scaled.at(r, c) *= y[static_cast<size_t>(c)];
    Matrix a_star = multiply_bt(u_scaled, host_svd.v);

    EmbedResult out;
    out.watermarked = matrix_image(a_star);
    out.key.alpha = alpha;
    out.key.block_count = k;
    out.key.image_side = n;
    out.key.s_prefix.assign(host_svd.s.begin(), host_svd.s.begin() + 4 * k);
    out.key.blocks = spec.blocks;
    out.key.y_monotone_warning = warning;
    return out;
}

DetectionReport detect(const Image& img, const WatermarkKey& key, double tol) {
    if (tol < 0.0) fail(ErrorCode::argument, "detect: tolerance must be nonnegative");
    DetectionReport report;
    report.x = detection_x(img, key);
    report.block_pass.resize(static_cast<size_t>(key.block_count));
    report.detected = true;
    for (int i = 0; i < key.block_count; ++i) {
        const double x3 = report.x[static_cast<size_t>(4 * i + 2)];
        const double x4 = report.x[static_cast<size_t>(4 * i + 3)];
        const double scale = std::max({std::abs(x3), std::abs(x4), kDetectEpsilon});
        const bool pass = std::abs(x3 - x4) <= tol * scale;
        report.block_pass[static_cast<size_t>(i)] = pass;
        if (!pass) report.detected = false;
    }
    return report;
}

Matrix extract_from_x(const std::vector<double>& x, int image_side) {
    if (x.empty() || x.size() % 4 != 0)
        fail(ErrorCode::argument, "extract: x must hold 4k values");
    const int k = static_cast<int>(x.size() / 4);
    if (4 * k > image_side) fail(ErrorCode::argument, "extract: too many blocks for image side");

    const Matrix& basis = u0();
    Matrix w(image_side, image_side);
    for (int i = 0; i < k; ++i) {
        // u0 * diag(x_block) * u0^T for this block
        Matrix scaled = basis;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) scaled.at(r, c) *= x[static_cast<size_t>(4 * i + c)];
        const Matrix block = multiply_bt(scaled, basis);
        const int off = 4 * i;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) w.at(off + r, off + c) = block.at(r, c);
    }
    return w;
}

Matrix extract(const Image& img, const WatermarkKey& key) {
    return extract_from_x(detection_x(img, key), key.image_side);
}

Matrix key_watermark(const WatermarkKey& key) {
    check_key(key);
    if (!key.has_blocks())
        fail(ErrorCode::degenerate, "key has no coefficient blocks (detect-only key)");
    WatermarkSpec spec{key.blocks, key.image_side};
    return assemble_watermark(spec);
}

} // namespace wm
