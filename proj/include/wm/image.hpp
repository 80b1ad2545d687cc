#ifndef WM_IMAGE_HPP
#define WM_IMAGE_HPP

#include <vector>

#include "wm/matrix.hpp"

namespace wm {

// Grayscale raster with real-valued samples in [0, 255], row-major.
// Immutable in practice: operations return new images.
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0);
    Image(int width, int height, std::vector<double> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return width_ == 0 || height_ == 0; }
    size_t pixel_count() const noexcept { return samples_.size(); }

    double& at(int x, int y) { return samples_[static_cast<size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return samples_[static_cast<size_t>(y) * width_ + x]; }

    double* data() noexcept { return samples_.data(); }
    const double* data() const noexcept { return samples_.data(); }

    bool operator==(const Image&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> samples_;
};

// Round half away from zero, clamp to [0, 255]. Idempotent.
Image quantize(const Image& img);
double quantize_sample(double v);

// Center-crop to the largest square whose side is divisible by 4. Returns the
// input unchanged when it already conforms. Fails below 4x4.
Image normalize_geometry(const Image& img);

// Rec. 601 luma used when collapsing color inputs.
double luma(double r, double g, double b);

// Square image <-> matrix views (copies).
Matrix image_matrix(const Image& img);
Image matrix_image(const Matrix& m);

} // namespace wm

#endif
