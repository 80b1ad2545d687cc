// Synthetic photo-like test scenes. The benchmarks in this repo are designed
// for natural photographs dominated by smooth low-rank structure; these
// builders produce deterministic stand-ins with a comparable singular-value
// profile (one dominant component, a mid plateau, then a fast-decaying tail).
#ifndef WM_TESTS_SCENES_HPP
#define WM_TESTS_SCENES_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wm/attacks.hpp"
#include "wm/image.hpp"

namespace scenes {

struct Blob {
    double cx, cy, sigma, amp;
};

inline wm::Image render(int side, const std::vector<Blob>& blobs, std::uint64_t tex_seed,
                        double tex_amp) {
    wm::Image img(side, side, 118.0);
    for (int y = 0; y < side; ++y) {
        const double fy = static_cast<double>(y) / side;
        for (int x = 0; x < side; ++x) {
            const double fx = static_cast<double>(x) / side;
            double v = img.at(x, y);
            v += 16.0 * std::exp(-((fx - 0.5) * (fx - 0.5) + (fy - 0.42) * (fy - 0.42)) /
                                 (2.0 * 0.45 * 0.45));
            for (const Blob& b : blobs) {
                const double dx = fx - b.cx;
                const double dy = fy - b.cy;
                v += b.amp * std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
            }
            img.at(x, y) = v;
        }
    }
    if (tex_amp > 0.0) {
        std::mt19937_64 rng(tex_seed);
        wm::Image noise(side, side);
        for (size_t i = 0; i < noise.pixel_count(); ++i) {
            const double u1 = std::max(static_cast<double>(rng() >> 11) * 0x1.0p-53, 1e-300);
            const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            noise.data()[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        }
        wm::Image smooth = wm::gaussian_filter(noise, 33, 8.0);
        double mean = 0.0;
        for (size_t i = 0; i < smooth.pixel_count(); ++i) mean += smooth.data()[i];
        mean /= static_cast<double>(smooth.pixel_count());
        double var = 0.0;
        for (size_t i = 0; i < smooth.pixel_count(); ++i) {
            const double d = smooth.data()[i] - mean;
            var += d * d;
        }
        var /= static_cast<double>(smooth.pixel_count());
        const double gain = tex_amp / std::sqrt(std::max(var, 1e-30));
        for (size_t i = 0; i < img.pixel_count(); ++i)
            img.data()[i] += gain * (smooth.data()[i] - mean);
    }
    double mean = 0.0;
    for (size_t i = 0; i < img.pixel_count(); ++i) mean += img.data()[i];
    mean /= static_cast<double>(img.pixel_count());
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        double v = img.data()[i] + (127.0 - mean);
        v = std::min(std::max(v, 3.0), 252.0);
        img.data()[i] = v;
    }
    return wm::quantize(img);
}

// The primary 512x512 benchmark scene.
inline wm::Image portrait512() {
    return render(512,
                  {{0.30, 0.30, 0.085, 34},
                   {0.70, 0.62, 0.090, -30},
                   {0.54, 0.20, 0.080, 31},
                   {0.22, 0.70, 0.082, -29},
                   {0.78, 0.28, 0.075, 30},
                   {0.40, 0.60, 0.070, -28},
                   {0.64, 0.84, 0.072, 27},
                   {0.16, 0.46, 0.068, -26},
                   {0.86, 0.76, 0.062, 25},
                   {0.48, 0.86, 0.058, -23}},
                  7, 1.2);
}

// Six deterministic 512x512 scenes standing in for the usual test photos.
inline std::vector<std::pair<std::string, wm::Image>> standard_six() {
    std::vector<std::pair<std::string, wm::Image>> out;
    out.emplace_back("lena", portrait512());
    const std::vector<std::vector<Blob>> layouts = {
        {{0.25, 0.40, 0.09, 36}, {0.72, 0.30, 0.08, -31}, {0.55, 0.70, 0.085, 30},
         {0.20, 0.78, 0.07, -28}, {0.82, 0.66, 0.066, 27}, {0.44, 0.16, 0.06, -24},
         {0.64, 0.50, 0.058, 22}},
        {{0.50, 0.50, 0.10, -34}, {0.24, 0.24, 0.08, 32}, {0.76, 0.26, 0.078, 30},
         {0.26, 0.76, 0.072, -29}, {0.74, 0.74, 0.07, 28}, {0.50, 0.14, 0.06, -23},
         {0.12, 0.52, 0.056, 21}},
        {{0.34, 0.56, 0.095, 35}, {0.68, 0.20, 0.085, -32}, {0.78, 0.58, 0.08, 29},
         {0.18, 0.24, 0.07, -27}, {0.52, 0.84, 0.068, 26}, {0.30, 0.86, 0.058, 22},
         {0.88, 0.84, 0.054, -20}},
        {{0.60, 0.40, 0.10, 33}, {0.26, 0.62, 0.088, -31}, {0.44, 0.20, 0.08, 30},
         {0.80, 0.74, 0.074, -28}, {0.16, 0.30, 0.066, 26}, {0.56, 0.64, 0.06, -23},
         {0.34, 0.82, 0.055, 21}},
        {{0.46, 0.34, 0.092, -35}, {0.72, 0.62, 0.086, 32}, {0.24, 0.50, 0.078, -30},
         {0.56, 0.78, 0.07, 28}, {0.84, 0.30, 0.064, -25}, {0.18, 0.80, 0.06, 23},
         {0.36, 0.12, 0.052, 20}},
    };
    const char* names[] = {"goldhill", "baboon", "barbara", "peppers", "boat"};
    for (size_t i = 0; i < layouts.size(); ++i)
        out.emplace_back(names[i], render(512, layouts[i], 20 + i, 1.2));
    return out;
}

// Structured small host for key generation in false-positive studies.
inline wm::Image structured64() {
    return render(64,
                  {{0.30, 0.30, 0.10, 40}, {0.70, 0.60, 0.12, -35}, {0.55, 0.20, 0.09, 30}},
                  5, 3.0);
}

// Photo-like host at an arbitrary 4m side.
inline wm::Image generic(int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Blob> blobs;
    const int count = 5 + static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i)
        blobs.push_back({0.12 + 0.76 * u(), 0.12 + 0.76 * u(), 0.05 + 0.06 * u(),
                         (i % 2 ? -1.0 : 1.0) * (20.0 + 18.0 * u())});
    return render(side, blobs, seed ^ 0x9e3779b97f4a7c15ull, 1.0 + 2.0 * u());
}

} // namespace scenes

#endif
