#ifndef WM_WATERMARK_HPP
#define WM_WATERMARK_HPP

#include <cstdint>
#include <vector>

#include "wm/linalg.hpp"

namespace wm {

// An ordered list of coefficient blocks for one watermark, plus the side of
// the image it is sized for.
struct WatermarkSpec {
    std::vector<CoefficientBlock> blocks;
    int image_side = 0;
};

// True iff the block satisfies the insertion-step ordering d4 >= d3 >= d2 >= d1
// with a nondegenerate pair (d3 > 0).
bool block_ordering_ok(const CoefficientBlock& block);

// Sum of squared spectrum values d1^2 + d2^2 + d3^2 + d4^2 (the squared
// Frobenius norm of the block's gram matrix).
double block_energy(const CoefficientBlock& block);

// True iff every block passes the ordering test, blocks are pairwise
// distinct, and 1 <= k <= image_side / 4.
bool spec_valid(const WatermarkSpec& spec);

// Deterministically samples `count` coefficient blocks from mt19937_64(seed).
//
// Entries are nonzero integers drawn uniformly from [-M, M] (one draw for the
// magnitude, one for the sign). A candidate is accepted when the ordering
// holds, d1 >= 0.5 * d3 (keeps the four spectrum values comparable, which is
// what carries detection through noisy attacks), its energy lies within
// [0.85, 1.15] * (target / count), and it repeats no earlier block. The
// per-key energy target fixes the embedding distortion at alpha = 0.06 on a
// 512x512 host to roughly 56 dB PSNR independent of the block count.
std::vector<CoefficientBlock> generate_blocks(std::uint64_t seed, int count);

// Entry magnitude bound used by generate_blocks for a given block count.
int coefficient_bound(int count);

// Per-block energy acceptance band for a given block count.
void energy_band(int count, double& lo, double& hi);

// Square matrix of side spec.image_side, zero except 4x4 blocks gram(c_i)
// along the diagonal at offsets 4*(i-1).
Matrix assemble_watermark(const WatermarkSpec& spec);

// Label-ordered spectra of the blocks laid out along a vector of length
// spec.image_side: entry 4*(i-1)+j is delta_j of block i, zeros afterwards.
std::vector<double> watermark_singulars(const WatermarkSpec& spec);

} // namespace wm

#endif
