#include "wm/image.hpp"

#include <cmath>

#include "wm/error.hpp"

namespace wm {

Image::Image(int width, int height, double fill)
    : width_(width), height_(height),
      samples_(static_cast<size_t>(width) * static_cast<size_t>(height), fill) {
    if (width < 0 || height < 0)
        fail(ErrorCode::argument, "image dimensions must be nonnegative");
}

Image::Image(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 0 || height < 0)
        fail(ErrorCode::argument, "image dimensions must be nonnegative");
    if (samples_.size() != static_cast<size_t>(width) * static_cast<size_t>(height))
        fail(ErrorCode::argument, "sample count does not match dimensions");
}

double quantize_sample(double v) {
    const double rounded = std::round(v);  // half away from zero
    if (rounded < 0.0) return 0.0;
    if (rounded > 255.0) return 255.0;
    return rounded;
}

Image quantize(const Image& img) {
    Image out(img.width(), img.height());
    for (size_t i = 0; i < img.pixel_count(); ++i)
        out.data()[i] = quantize_sample(img.data()[i]);
    return out;
}

Image normalize_geometry(const Image& img) {
    if (img.empty())
        fail(ErrorCode::argument, "normalize_geometry: empty image");
    const int side = std::min(img.width(), img.height()) / 4 * 4;
    if (side < 4)
        fail(ErrorCode::dimension, "normalize_geometry: image smaller than 4x4");
    if (img.width() == img.height() && img.width() == side) return img;

    const int ox = (img.width() - side) / 2;
    const int oy = (img.height() - side) / 2;
    Image out(side, side);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            out.at(x, y) = img.at(x + ox, y + oy);
    return out;
}

double luma(double r, double g, double b) {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

Matrix image_matrix(const Image& img) {
    Matrix m(img.height(), img.width());
    for (size_t i = 0; i < img.pixel_count(); ++i) m.data()[i] = img.data()[i];
    return m;
}

Image matrix_image(const Matrix& m) {
    std::vector<double> samples(m.data(), m.data() + m.size());
    return Image(m.cols(), m.rows(), std::move(samples));
}

} // namespace wm
