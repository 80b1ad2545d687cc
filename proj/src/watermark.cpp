#include "wm/watermark.hpp"

#include <cmath>
#include <random>
#include <set>

#include "wm/error.hpp"

namespace wm {

namespace {

// Total spectrum energy per key, sized so that alpha = 0.06 on a 512x512
// host lands near 56 dB PSNR (Frobenius distortion = alpha * sqrt(energy)).
constexpr double kKeyEnergyTarget = 255.0 * 255.0 * 512.0 * 512.0 / (0.06 * 0.06) / 398107.1705534972;
// 398107.17... = 10^5.6

constexpr double kEnergyBandLo = 0.85;
constexpr double kEnergyBandHi = 1.15;
constexpr double kFlatnessFloor = 0.5;  // accept only d1 >= 0.5 * d3

} // namespace

bool block_ordering_ok(const CoefficientBlock& block) {
    const auto d = circulant_spectrum(block);
    return d[3] >= d[2] && d[2] >= d[1] && d[1] >= d[0] && d[2] > 0.0;
}

double block_energy(const CoefficientBlock& block) {
    const auto d = circulant_spectrum(block);
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3];
}

bool spec_valid(const WatermarkSpec& spec) {
    const int k = static_cast<int>(spec.blocks.size());
    if (k < 1 || 4 * k > spec.image_side) return false;
    for (const auto& b : spec.blocks)
        if (!block_ordering_ok(b)) return false;
    for (size_t i = 0; i < spec.blocks.size(); ++i)
        for (size_t j = i + 1; j < spec.blocks.size(); ++j)
            if (spec.blocks[i] == spec.blocks[j]) return false;
    return true;
}

int coefficient_bound(int count) {
    const double per_block = kKeyEnergyTarget / count;
    const double d3_scale = std::sqrt(per_block / 3.3);
    return std::max(2, static_cast<int>(std::lround(std::sqrt(d3_scale))));
}

void energy_band(int count, double& lo, double& hi) {
    const double per_block = kKeyEnergyTarget / count;
    lo = kEnergyBandLo * per_block;
    hi = kEnergyBandHi * per_block;
}

std::vector<CoefficientBlock> generate_blocks(std::uint64_t seed, int count) {
    if (count < 1) fail(ErrorCode::argument, "generate_blocks: count must be >= 1");

    std::mt19937_64 rng(seed);
    const int bound = coefficient_bound(count);
    double lo, hi;
    energy_band(count, lo, hi);

    std::vector<CoefficientBlock> out;
    out.reserve(static_cast<size_t>(count));
    std::set<std::array<double, 4>> seen;

    // Draw order per entry: one 64-bit word for the magnitude, one for the
    // sign. Fully integer-valued, so the sequence is identical on every
    // platform for a given seed.
    constexpr std::uint64_t kMaxDraws = 1ull << 28;
    std::uint64_t draws = 0;
    while (out.size() < static_cast<size_t>(count)) {
        if (++draws > kMaxDraws)
            fail(ErrorCode::numeric, "generate_blocks: rejection sampling stalled");
        CoefficientBlock cand;
        for (int i = 0; i < 4; ++i) {
            const auto mag = static_cast<double>(1 + rng() % static_cast<std::uint64_t>(bound));
            const double sgn = (rng() & 1ull) ? 1.0 : -1.0;
            cand.c[static_cast<size_t>(i)] = sgn * mag;
        }
        const auto d = circulant_spectrum(cand);
        if (!(d[2] >= d[1] && d[1] >= d[0] && d[0] >= kFlatnessFloor * d[2] && d[2] > 0.0))
            continue;
        const double energy = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3];
        if (energy < lo || energy > hi) continue;
        if (!seen.insert(cand.c).second) continue;
        out.push_back(cand);
    }
    return out;
}

Matrix assemble_watermark(const WatermarkSpec& spec) {
    const int k = static_cast<int>(spec.blocks.size());
    if (k < 1) fail(ErrorCode::argument, "assemble_watermark: no blocks");
    if (4 * k > spec.image_side)
        fail(ErrorCode::argument, "assemble_watermark: too many blocks for image side");

    Matrix w(spec.image_side, spec.image_side);
    for (int i = 0; i < k; ++i) {
        const Matrix g = gram(spec.blocks[static_cast<size_t>(i)]);
        const int off = 4 * i;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                w.at(off + r, off + c) = g.at(r, c);
    }
    return w;
}

std::vector<double> watermark_singulars(const WatermarkSpec& spec) {
    const int k = static_cast<int>(spec.blocks.size());
    if (k < 1) fail(ErrorCode::argument, "watermark_singulars: no blocks");
    if (4 * k > spec.image_side)
        fail(ErrorCode::argument, "watermark_singulars: too many blocks for image side");

    std::vector<double> out(static_cast<size_t>(spec.image_side), 0.0);
    for (int i = 0; i < k; ++i) {
        const auto d = circulant_spectrum(spec.blocks[static_cast<size_t>(i)]);
        for (int j = 0; j < 4; ++j) out[static_cast<size_t>(4 * i + j)] = d[static_cast<size_t>(j)];
    }
    return out;
}

} // namespace wm
