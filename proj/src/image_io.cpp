#include "wm/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

#include "wm/error.hpp"

namespace wm {

namespace {

std::string lower_ext(const std::string& path) {
    const size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return ext;
}

// --- PGM ------------------------------------------------------------------

int read_pnm_token(std::istream& in) {
    // Skips whitespace and '#' comments between header tokens.
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF) fail(ErrorCode::format, "pgm: truncated header");
    int value = 0;
    bool any = false;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        any = true;
        ch = in.get();
    }
    if (!any) fail(ErrorCode::format, "pgm: malformed header token");
    return value;
}

Image load_pgm(std::istream& in) {
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        fail(ErrorCode::format, "pgm: not a binary P5 file");
    const int width = read_pnm_token(in);
    const int height = read_pnm_token(in);
    const int maxval = read_pnm_token(in);
    if (width <= 0 || height <= 0)
        fail(ErrorCode::format, "pgm: zero-size image");
    if (maxval <= 0 || maxval > 255)
        fail(ErrorCode::format, "pgm: only 8-bit images are supported");
    std::vector<unsigned char> row(static_cast<size_t>(width));
    Image img(width, height);
    for (int y = 0; y < height; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), width);
        if (!in) fail(ErrorCode::format, "pgm: truncated pixel data");
        for (int x = 0; x < width; ++x) img.at(x, y) = row[static_cast<size_t>(x)];
    }
    return img;
}

void save_pgm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot open for writing: " + path);
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(img.width()));
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x)
            row[static_cast<size_t>(x)] = static_cast<unsigned char>(quantize_sample(img.at(x, y)));
        out.write(reinterpret_cast<const char*>(row.data()), img.width());
    }
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

// --- PNG ------------------------------------------------------------------

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Image load_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) fail(ErrorCode::io, "cannot open: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(ErrorCode::numeric, "png: allocation failure");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(ErrorCode::format, "png: decode error in " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    if (width == 0 || height == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(ErrorCode::format, "png: zero-size image");
    }
    std::vector<unsigned char> row(static_cast<size_t>(width) * channels);
    Image img(static_cast<int>(width), static_cast<int>(height));
    for (png_uint_32 y = 0; y < height; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (png_uint_32 x = 0; x < width; ++x) {
            double v;
            if (channels >= 3) {
                v = quantize_sample(luma(row[x * channels], row[x * channels + 1], row[x * channels + 2]));
            } else {
                v = row[x * channels];
            }
            img.at(static_cast<int>(x), static_cast<int>(y)) = v;
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void save_png(const Image& img, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) fail(ErrorCode::io, "cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        fail(ErrorCode::numeric, "png: allocation failure");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(ErrorCode::io, "png: encode error for " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
                 static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<unsigned char> row(static_cast<size_t>(img.width()));
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x)
            row[static_cast<size_t>(x)] = static_cast<unsigned char>(quantize_sample(img.at(x, y)));
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

Image load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) fail(ErrorCode::io, "cannot open: " + path);
    unsigned char magic[8] = {};
    probe.read(reinterpret_cast<char*>(magic), sizeof(magic));
    const std::streamsize got = probe.gcount();
    probe.close();

    if (got >= 2 && magic[0] == 'P' && magic[1] == '5') {
        std::ifstream in(path, std::ios::binary);
        return load_pgm(in);
    }
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (got >= 8 && std::memcmp(magic, png_sig, 8) == 0) return load_png(path);
    fail(ErrorCode::format, "unsupported image format: " + path);
}

void save_image(const Image& img, const std::string& path) {
    if (img.empty()) fail(ErrorCode::argument, "save_image: empty image");
    const std::string ext = lower_ext(path);
    if (ext == "pgm" || ext == "pnm") {
        save_pgm(img, path);
    } else if (ext == "png") {
        save_png(img, path);
    } else {
        fail(ErrorCode::unsupported, "unsupported output extension: " + path);
    }
}

} // namespace wm
