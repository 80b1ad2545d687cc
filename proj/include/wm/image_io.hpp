#ifndef WM_IMAGE_IO_HPP
#define WM_IMAGE_IO_HPP

#include <string>

#include "wm/image.hpp"

namespace wm {

// Reads PGM (binary P5, 8-bit) or PNG (8-bit gray or color; color collapses
// to luma). Format is detected from the file's magic bytes.
Image load_image(const std::string& path);

// Writes by extension: .pgm/.pnm -> binary P5, .png -> 8-bit grayscale PNG.
// Samples are quantized on output, so load(save(img)) == quantize(img).
void save_image(const Image& img, const std::string& path);

} // namespace wm

#endif
