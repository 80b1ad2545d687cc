#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "wm/error.hpp"
#include "wm/image.hpp"
#include "wm/image_io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "wm_imagecore_tests";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

wm::Image random_image(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    wm::Image img(w, h);
    for (size_t i = 0; i < img.pixel_count(); ++i)
        img.data()[i] = 255.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return img;
}

} // namespace

TEST_CASE("quantize rounding rules") {
    wm::Image img(3, 1, 0.0);
    img.at(0, 0) = 254.5;
    img.at(1, 0) = -3.2;
    img.at(2, 0) = 127.49;
    const wm::Image q = wm::quantize(img);
    CHECK(q.at(0, 0) == 255.0);
    CHECK(q.at(1, 0) == 0.0);
    CHECK(q.at(2, 0) == 127.0);
    CHECK(wm::quantize(q) == q);
}

TEST_CASE("normalize_geometry keeps conforming images and center-crops the rest") {
    const wm::Image ok = random_image(512, 512, 1);
    CHECK(wm::normalize_geometry(ok) == ok);

    const wm::Image odd = random_image(513, 511, 2);
    const wm::Image cropped = wm::normalize_geometry(odd);
    CHECK(cropped.width() == 508);
    CHECK(cropped.height() == 508);
    // offsets: x floor((513-508)/2) = 2, y floor((511-508)/2) = 1
    for (int y = 0; y < 508; y += 41)
        for (int x = 0; x < 508; x += 37) CHECK(cropped.at(x, y) == odd.at(x + 2, y + 1));

    CHECK(wm::normalize_geometry(cropped) == cropped);

    const wm::Image tiny = random_image(3, 3, 3);
    CHECK_THROWS_AS((void)wm::normalize_geometry(tiny), wm::Error);
}

TEST_CASE("pgm round trip is bit exact") {
    const wm::Image img = random_image(37, 23, 4);
    const fs::path path = temp_dir() / "roundtrip.pgm";
    wm::save_image(img, path.string());
    const wm::Image back = wm::load_image(path.string());
    CHECK(back == wm::quantize(img));
}

TEST_CASE("png round trip is bit exact") {
    const wm::Image img = random_image(64, 48, 5);
    const fs::path path = temp_dir() / "roundtrip.png";
    wm::save_image(img, path.string());
    const wm::Image back = wm::load_image(path.string());
    CHECK(back == wm::quantize(img));
}

TEST_CASE("solid black image loads as all zeros") {
    wm::Image black(16, 16, 0.0);
    const fs::path path = temp_dir() / "black.pgm";
    wm::save_image(black, path.string());
    const wm::Image back = wm::load_image(path.string());
    for (size_t i = 0; i < back.pixel_count(); ++i) CHECK(back.data()[i] == 0.0);
}

TEST_CASE("luma conversion of a red pixel") {
    CHECK(wm::quantize_sample(wm::luma(255, 0, 0)) == 76.0);
}

TEST_CASE("color png collapses to luma") {
    // hand-written 1x1 red PNG via libpng is overkill; write an RGB PNG with
    // the library under test is not possible (grayscale only), so exercise
    // the luma path through a tiny handcrafted PGM-equivalent check plus the
    // formula test above, and decode a palette-free RGB PNG produced here.
    const fs::path path = temp_dir() / "red.png";
    {
        // minimal 1x1 RGB PNG (red) baked as bytes
        static const unsigned char bytes[] = {
            0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d,
            0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01,
            0x08, 0x02, 0x00, 0x00, 0x00, 0x90, 0x77, 0x53, 0xde, 0x00, 0x00, 0x00,
            0x0c, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0xf8, 0xcf, 0xc0, 0x00,
            0x00, 0x03, 0x01, 0x01, 0x00, 0xc9, 0xfe, 0x92, 0xef, 0x00, 0x00, 0x00,
            0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
        std::ofstream out(path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(bytes), sizeof(bytes));
    }
    const wm::Image img = wm::load_image(path.string());
    REQUIRE(img.width() == 1);
    REQUIRE(img.height() == 1);
    CHECK(img.at(0, 0) == 76.0);
}

TEST_CASE("io error paths") {
    CHECK_THROWS_AS((void)wm::load_image((temp_dir() / "missing.pgm").string()), wm::Error);

    const fs::path garbage = temp_dir() / "garbage.bin";
    {
        std::ofstream out(garbage, std::ios::binary);
        out << "not an image at all";
    }
    CHECK_THROWS_AS((void)wm::load_image(garbage.string()), wm::Error);

    const fs::path truncated = temp_dir() / "truncated.pgm";
    {
        std::ofstream out(truncated, std::ios::binary);
        out << "P5\n8 8\n255\nxx";
    }
    CHECK_THROWS_AS((void)wm::load_image(truncated.string()), wm::Error);

    const wm::Image img = random_image(8, 8, 6);
    CHECK_THROWS_AS(wm::save_image(img, (temp_dir() / "out.tiff").string()), wm::Error);
}
