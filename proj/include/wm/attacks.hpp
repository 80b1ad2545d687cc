#ifndef WM_ATTACKS_HPP
#define WM_ATTACKS_HPP

#include <cstdint>
#include <map>
#include <string>

#include "wm/image.hpp"

namespace wm {

// One parsed attack: a kind plus named numeric parameters. Text form is
// "kind" or "kind:name=value,name=value", e.g. "jpeg:quality=50" or
// "salt_pepper:density=0.02,seed=11".
struct AttackSpec {
    std::string kind;
    std::map<std::string, double> params;

    static AttackSpec parse(const std::string& text);

    bool has(const std::string& name) const { return params.count(name) != 0; }
    double get(const std::string& name, double fallback) const;
    std::uint64_t seed() const;  // "seed" param, default 1
};

// Dispatches on spec.kind. The input is quantized to 8 bits first and the
// output is quantized; dimensions are preserved.
Image apply_attack(const Image& img, const AttackSpec& spec);
Image apply_attack(const Image& img, const std::string& spec_text);

// Individual attacks. All take already-arbitrary images; apply_attack is the
// quantizing front door.
Image jpeg_cycle(const Image& img, int quality);
Image salt_pepper(const Image& img, double density, std::uint64_t seed);
Image speckle(const Image& img, double variance, std::uint64_t seed);
Image gaussian_noise(const Image& img, double mean, double variance, std::uint64_t seed);
Image gaussian_filter(const Image& img, int hsize, double sigma);
Image median_filter(const Image& img, int window);
Image average_filter(const Image& img, int window);
Image sharpen(const Image& img, double strength);
// Pure rotation: about center, bilinear, cropped to the original frame,
// uncovered corners filled with 0.
Image rotate(const Image& img, double angle_deg);
// Rotation followed by inverse re-registration (the detector knows the
// angle). Both passes use clamped bilinear sampling so no zero fill bleeds
// into the frame; what remains is resampling loss.
Image rotate_registered(const Image& img, double angle_deg);
Image translate(const Image& img, int dx, int dy, bool wrap);
Image crop_center(const Image& img, int size, double fill);
Image histogram_equalization(const Image& img);
Image gamma_correction(const Image& img, double g);
Image scale_cycle(const Image& img, double out_factor, double in_factor);
Image wiener_filter(const Image& img, int window);

} // namespace wm

#endif
