#include "wm/attacks.hpp"

#include <jpeglib.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include "wm/error.hpp"

namespace wm {

// --- spec parsing -----------------------------------------------------------

AttackSpec AttackSpec::parse(const std::string& text) {
    AttackSpec spec;
    const size_t colon = text.find(':');
    spec.kind = text.substr(0, colon);
    if (spec.kind.empty()) fail(ErrorCode::argument, "attack: empty kind");
    if (colon == std::string::npos) return spec;

    std::string rest = text.substr(colon + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string item = rest.substr(pos, comma - pos);
        const size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            fail(ErrorCode::argument, "attack: expected name=value, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            spec.params[name] = v;
        } catch (const std::exception&) {
            fail(ErrorCode::argument, "attack: bad numeric value '" + value + "'");
        }
        pos = comma + 1;
    }
    return spec;
}

double AttackSpec::get(const std::string& name, double fallback) const {
    const auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

std::uint64_t AttackSpec::seed() const {
    return static_cast<std::uint64_t>(get("seed", 1.0));
}

// --- deterministic RNG helpers ---------------------------------------------
// std::uniform_real_distribution and friends are implementation-defined, so
// raw mt19937_64 words are mapped by hand.

namespace {

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
    // Box-Muller; u1 floored away from zero.
    const double u1 = std::max(unit_uniform(rng), 1e-300);
    const double u2 = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int clamp_index(int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); }

double sample_clamped(const Image& img, double x, double y) {
    // Bilinear with replicate boundary.
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;
    const int x0c = clamp_index(x0, img.width());
    const int x1c = clamp_index(x0 + 1, img.width());
    const int y0c = clamp_index(y0, img.height());
    const int y1c = clamp_index(y0 + 1, img.height());
    const double top = img.at(x0c, y0c) * (1.0 - fx) + img.at(x1c, y0c) * fx;
    const double bot = img.at(x0c, y1c) * (1.0 - fx) + img.at(x1c, y1c) * fx;
    return top * (1.0 - fy) + bot * fy;
}

bool sample_zero_fill(const Image& img, double x, double y, double& out) {
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    if (x0 < -1 || y0 < -1 || x0 >= img.width() || y0 >= img.height()) {
        out = 0.0;
        return false;
    }
    const double fx = x - x0;
    const double fy = y - y0;
    auto px = [&](int xx, int yy) -> double {
        if (xx < 0 || yy < 0 || xx >= img.width() || yy >= img.height()) return 0.0;
        return img.at(xx, yy);
    };
    const double top = px(x0, y0) * (1.0 - fx) + px(x0 + 1, y0) * fx;
    const double bot = px(x0, y0 + 1) * (1.0 - fx) + px(x0 + 1, y0 + 1) * fx;
    out = top * (1.0 - fy) + bot * fy;
    return true;
}

std::vector<double> gaussian_kernel_1d(int hsize, double sigma) {
    std::vector<double> k(static_cast<size_t>(hsize));
    const int half = hsize / 2;
    double sum = 0.0;
    for (int i = 0; i < hsize; ++i) {
        const double d = i - half;
        k[static_cast<size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += k[static_cast<size_t>(i)];
    }
    for (double& v : k) v /= sum;
    return k;
}

Image convolve_separable(const Image& img, const std::vector<double>& k) {
    const int half = static_cast<int>(k.size()) / 2;
    Image tmp(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = 0; i < static_cast<int>(k.size()); ++i)
                acc += k[static_cast<size_t>(i)] * img.at(clamp_index(x + i - half, img.width()), y);
            tmp.at(x, y) = acc;
        }
    Image out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = 0; i < static_cast<int>(k.size()); ++i)
                acc += k[static_cast<size_t>(i)] * tmp.at(x, clamp_index(y + i - half, img.height()));
            out.at(x, y) = acc;
        }
    return out;
}

void require_odd_window(int window, const char* what) {
    if (window < 1 || window % 2 == 0)
        fail(ErrorCode::argument, std::string(what) + ": window must be odd and >= 1");
}

Image resize_bilinear(const Image& img, int out_w, int out_h) {
    Image out(out_w, out_h);
    const double sx = static_cast<double>(img.width()) / out_w;
    const double sy = static_cast<double>(img.height()) / out_h;
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x) {
            const double src_x = (x + 0.5) * sx - 0.5;
            const double src_y = (y + 0.5) * sy - 0.5;
            out.at(x, y) = sample_clamped(img, src_x, src_y);
        }
    return out;
}

// --- libjpeg plumbing -------------------------------------------------------

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->jump, 1);
}

} // namespace

Image jpeg_cycle(const Image& img, int quality) {
    if (quality < 1 || quality > 100)
        fail(ErrorCode::argument, "jpeg: quality must be in [1, 100]");
    const Image q = quantize(img);
    const int w = q.width(), h = q.height();
    std::vector<unsigned char> pixels(static_cast<size_t>(w) * h);
    for (size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = static_cast<unsigned char>(q.data()[i]);

    // Encode to memory.
    JpegErrorMgr err{};
    unsigned char* buffer = nullptr;
    unsigned long buffer_size = 0;
    {
        jpeg_compress_struct cinfo{};
        cinfo.err = jpeg_std_error(&err.pub);
        err.pub.error_exit = jpeg_error_exit;
        if (setjmp(err.jump)) {
            jpeg_destroy_compress(&cinfo);
            if (buffer) free(buffer);
            fail(ErrorCode::numeric, "jpeg: encode failed");
        }
        jpeg_create_compress(&cinfo);
        jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
        cinfo.image_width = static_cast<JDIMENSION>(w);
        cinfo.image_height = static_cast<JDIMENSION>(h);
        cinfo.input_components = 1;
        cinfo.in_color_space = JCS_GRAYSCALE;
        jpeg_set_defaults(&cinfo);
        jpeg_set_quality(&cinfo, quality, TRUE);
        jpeg_start_compress(&cinfo, TRUE);
        while (cinfo.next_scanline < cinfo.image_height) {
            JSAMPROW row = pixels.data() + static_cast<size_t>(cinfo.next_scanline) * w;
            jpeg_write_scanlines(&cinfo, &row, 1);
        }
        jpeg_finish_compress(&cinfo);
        jpeg_destroy_compress(&cinfo);
    }

    // Decode back.
    Image out(w, h);
    {
        jpeg_decompress_struct dinfo{};
        dinfo.err = jpeg_std_error(&err.pub);
        err.pub.error_exit = jpeg_error_exit;
        if (setjmp(err.jump)) {
            jpeg_destroy_decompress(&dinfo);
            free(buffer);
            fail(ErrorCode::numeric, "jpeg: decode failed");
        }
        jpeg_create_decompress(&dinfo);
        jpeg_mem_src(&dinfo, buffer, buffer_size);
        jpeg_read_header(&dinfo, TRUE);
        dinfo.out_color_space = JCS_GRAYSCALE;
        jpeg_start_decompress(&dinfo);
        std::vector<unsigned char> row(static_cast<size_t>(w));
        while (dinfo.output_scanline < dinfo.output_height) {
            JSAMPROW rp = row.data();
            jpeg_read_scanlines(&dinfo, &rp, 1);
            const int y = static_cast<int>(dinfo.output_scanline) - 1;
            for (int x = 0; x < w; ++x) out.at(x, y) = row[static_cast<size_t>(x)];
        }
        jpeg_finish_decompress(&dinfo);
        jpeg_destroy_decompress(&dinfo);
    }
    free(buffer);
    return out;
}

Image salt_pepper(const Image& img, double density, std::uint64_t seed) {
    if (density < 0.0 || density > 1.0)
        fail(ErrorCode::argument, "salt_pepper: density must be in [0, 1]");
    std::mt19937_64 rng(seed);
    Image out = img;
    // Row-major sweep; a second word decides salt vs pepper only for hit pixels.
    for (size_t i = 0; i < out.pixel_count(); ++i) {
        if (unit_uniform(rng) < density)
            out.data()[i] = (unit_uniform(rng) < 0.5) ? 0.0 : 255.0;
    }
    return out;
}

Image speckle(const Image& img, double variance, std::uint64_t seed) {
    if (variance < 0.0) fail(ErrorCode::argument, "speckle: variance must be nonnegative");
    std::mt19937_64 rng(seed);
    const double half_width = std::sqrt(3.0 * variance);  // uniform on [-a, a] has variance a^2/3
    Image out(img.width(), img.height());
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const double u = (2.0 * unit_uniform(rng) - 1.0) * half_width;
        out.data()[i] = img.data()[i] * (1.0 + u);
    }
    return out;
}

Image gaussian_noise(const Image& img, double mean, double variance, std::uint64_t seed) {
    if (variance < 0.0) fail(ErrorCode::argument, "gaussian_noise: variance must be nonnegative");
    std::mt19937_64 rng(seed);
    const double sigma = std::sqrt(variance);  // in normalized [0,1] units
    Image out(img.width(), img.height());
    for (size_t i = 0; i < img.pixel_count(); ++i)
        out.data()[i] = img.data()[i] + 255.0 * (mean + sigma * standard_normal(rng));
    return out;
}

Image gaussian_filter(const Image& img, int hsize, double sigma) {
    require_odd_window(hsize, "gaussian_filter");
    if (sigma <= 0.0) fail(ErrorCode::argument, "gaussian_filter: sigma must be positive");
    if (hsize == 1) return img;
    return convolve_separable(img, gaussian_kernel_1d(hsize, sigma));
}

Image median_filter(const Image& img, int window) {
    require_odd_window(window, "median_filter");
    if (window == 1) return img;
    const int half = window / 2;
    Image out(img.width(), img.height());
    std::vector<double> patch(static_cast<size_t>(window) * window);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            size_t n = 0;
            for (int dy = -half; dy <= half; ++dy)
                for (int dx = -half; dx <= half; ++dx)
                    patch[n++] = img.at(clamp_index(x + dx, img.width()),
                                        clamp_index(y + dy, img.height()));
            auto mid = patch.begin() + static_cast<long>(n / 2);
            std::nth_element(patch.begin(), mid, patch.begin() + static_cast<long>(n));
            out.at(x, y) = *mid;
        }
    return out;
}

Image average_filter(const Image& img, int window) {
    require_odd_window(window, "average_filter");
    if (window == 1) return img;
    std::vector<double> k(static_cast<size_t>(window), 1.0 / window);
    return convolve_separable(img, k);
}

Image sharpen(const Image& img, double strength) {
    if (strength < 0.0) fail(ErrorCode::argument, "sharpen: strength must be nonnegative");
    const Image blurred = gaussian_filter(img, 5, 1.0);
    Image out(img.width(), img.height());
    for (size_t i = 0; i < img.pixel_count(); ++i)
        out.data()[i] = img.data()[i] + strength * (img.data()[i] - blurred.data()[i]);
    return out;
}

Image rotate(const Image& img, double angle_deg) {
    const double th = angle_deg * std::numbers::pi / 180.0;
    const double cs = std::cos(th), sn = std::sin(th);
    const double cx = (img.width() - 1) / 2.0;
    const double cy = (img.height() - 1) / 2.0;
    Image out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            // inverse map: rotate output pixel back by -angle
            const double rx = cs * (x - cx) + sn * (y - cy) + cx;
            const double ry = -sn * (x - cx) + cs * (y - cy) + cy;
            double v = 0.0;
            sample_zero_fill(img, rx, ry, v);
            out.at(x, y) = v;
        }
    return out;
}

Image rotate_registered(const Image& img, double angle_deg) {
    const double th = angle_deg * std::numbers::pi / 180.0;
    const double cs = std::cos(th), sn = std::sin(th);
    const int w = img.width(), h = img.height();
    const int canvas_w = static_cast<int>(std::ceil(w * std::abs(cs) + h * std::abs(sn)));
    const int canvas_h = static_cast<int>(std::ceil(w * std::abs(sn) + h * std::abs(cs)));
    const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
    const double gx = (canvas_w - 1) / 2.0, gy = (canvas_h - 1) / 2.0;

    Image canvas(canvas_w, canvas_h);
    for (int y = 0; y < canvas_h; ++y)
        for (int x = 0; x < canvas_w; ++x) {
            const double rx = cs * (x - gx) + sn * (y - gy) + cx;
            const double ry = -sn * (x - gx) + cs * (y - gy) + cy;
            canvas.at(x, y) = sample_clamped(img, rx, ry);
        }
    Image out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double rx = cs * (x - cx) - sn * (y - cy) + gx;
            const double ry = sn * (x - cx) + cs * (y - cy) + gy;
            out.at(x, y) = sample_clamped(canvas, rx, ry);
        }
    return out;
}

Image translate(const Image& img, int dx, int dy, bool wrap) {
    Image out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            int sx = x - dx, sy = y - dy;
            if (wrap) {
                sx = ((sx % img.width()) + img.width()) % img.width();
                sy = ((sy % img.height()) + img.height()) % img.height();
                out.at(x, y) = img.at(sx, sy);
            } else {
                out.at(x, y) = (sx >= 0 && sy >= 0 && sx < img.width() && sy < img.height())
                                   ? img.at(sx, sy)
                                   : 0.0;
            }
        }
    return out;
}

Image crop_center(const Image& img, int size, double fill) {
    if (size < 0 || size > std::min(img.width(), img.height()))
        fail(ErrorCode::argument, "crop_center: size exceeds image");
    Image out = img;
    const int ox = (img.width() - size) / 2;
    const int oy = (img.height() - size) / 2;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) out.at(ox + x, oy + y) = fill;
    return out;
}

Image histogram_equalization(const Image& img) {
    const Image q = quantize(img);
    size_t hist[256] = {};
    for (size_t i = 0; i < q.pixel_count(); ++i)
        ++hist[static_cast<size_t>(q.data()[i])];

    size_t cdf[256];
    size_t run = 0;
    for (int v = 0; v < 256; ++v) {
        run += hist[static_cast<size_t>(v)];
        cdf[static_cast<size_t>(v)] = run;
    }
    size_t cdf_min = 0;
    for (int v = 0; v < 256; ++v)
        if (hist[static_cast<size_t>(v)] != 0) {
            cdf_min = cdf[static_cast<size_t>(v)];
            break;
        }
    const size_t total = q.pixel_count();
    if (cdf_min == total) return q;  // constant image

    double lut[256];
    for (int v = 0; v < 256; ++v) {
        const double num = static_cast<double>(cdf[static_cast<size_t>(v)] - cdf_min);
        lut[static_cast<size_t>(v)] = std::round(num / static_cast<double>(total - cdf_min) * 255.0);
    }
    Image out(q.width(), q.height());
    for (size_t i = 0; i < q.pixel_count(); ++i)
        out.data()[i] = lut[static_cast<size_t>(q.data()[i])];
    return out;
}

Image gamma_correction(const Image& img, double g) {
    if (g <= 0.0) fail(ErrorCode::argument, "gamma: exponent must be positive");
    Image out(img.width(), img.height());
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const double v = std::max(img.data()[i], 0.0) / 255.0;
        out.data()[i] = 255.0 * std::pow(v, g);
    }
    return out;
}

Image scale_cycle(const Image& img, double out_factor, double in_factor) {
    if (out_factor <= 0.0 || in_factor <= 0.0)
        fail(ErrorCode::argument, "scale_cycle: factors must be positive");
    const int small_w = std::max(1, static_cast<int>(std::lround(img.width() * out_factor)));
    const int small_h = std::max(1, static_cast<int>(std::lround(img.height() * out_factor)));
    if (small_w == img.width() && small_h == img.height()) return img;
    const Image small = resize_bilinear(img, small_w, small_h);
    return resize_bilinear(small, img.width(), img.height());
}

Image wiener_filter(const Image& img, int window) {
    require_odd_window(window, "wiener_filter");
    if (window == 1) return img;
    const int half = window / 2;
    const int w = img.width(), h = img.height();
    Image mean(w, h), var(w, h);
    const double n = static_cast<double>(window) * window;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.0, s2 = 0.0;
            for (int dy = -half; dy <= half; ++dy)
                for (int dx = -half; dx <= half; ++dx) {
                    const double v = img.at(clamp_index(x + dx, w), clamp_index(y + dy, h));
                    s += v;
                    s2 += v * v;
                }
            const double m = s / n;
            mean.at(x, y) = m;
            var.at(x, y) = std::max(0.0, s2 / n - m * m);
        }
    double noise = 0.0;
    for (size_t i = 0; i < var.pixel_count(); ++i) noise += var.data()[i];
    noise /= static_cast<double>(var.pixel_count());

    Image out(w, h);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const double local_var = std::max(var.data()[i], noise);
        const double gain = local_var > 0.0 ? (local_var - noise) / local_var : 0.0;
        out.data()[i] = mean.data()[i] + gain * (img.data()[i] - mean.data()[i]);
    }
    return out;
}

Image apply_attack(const Image& img, const AttackSpec& spec) {
    const Image in = quantize(img);
    Image out;
    const std::string& k = spec.kind;
    if (k == "none") {
        out = in;
    } else if (k == "jpeg") {
        out = jpeg_cycle(in, static_cast<int>(spec.get("quality", 50)));
    } else if (k == "salt_pepper") {
        out = salt_pepper(in, spec.get("density", 0.02), spec.seed());
    } else if (k == "speckle") {
        out = speckle(in, spec.get("variance", 0.04), spec.seed());
    } else if (k == "gaussian_noise") {
        out = gaussian_noise(in, spec.get("mean", 0.0), spec.get("variance", 0.01), spec.seed());
    } else if (k == "gaussian_filter") {
        out = gaussian_filter(in, static_cast<int>(spec.get("hsize", 3)), spec.get("sigma", 0.5));
    } else if (k == "median_filter") {
        out = median_filter(in, static_cast<int>(spec.get("window", 3)));
    } else if (k == "average_filter") {
        out = average_filter(in, static_cast<int>(spec.get("window", 3)));
    } else if (k == "sharpen") {
        out = sharpen(in, spec.get("strength", 0.8));
    } else if (k == "rotate") {
        const double angle = spec.get("angle", 0.0);
        out = spec.get("register", 0.0) != 0.0 ? rotate_registered(in, angle) : rotate(in, angle);
    } else if (k == "translate") {
        const std::string fill_mode = spec.get("wrap", 0.0) != 0.0 ? "wrap" : "zero";
        out = translate(in, static_cast<int>(spec.get("dx", 0)), static_cast<int>(spec.get("dy", 0)),
                        fill_mode == "wrap");
    } else if (k == "crop_center") {
        out = crop_center(in, static_cast<int>(spec.get("size", 64)), spec.get("fill", 0.0));
    } else if (k == "histeq") {
        out = histogram_equalization(in);
    } else if (k == "gamma") {
        out = gamma_correction(in, spec.get("g", 1.0));
    } else if (k == "scale_cycle") {
        out = scale_cycle(in, spec.get("out", 0.5), spec.get("in", 2.0));
    } else if (k == "wiener") {
        out = wiener_filter(in, static_cast<int>(spec.get("window", 3)));
    } else {
        fail(ErrorCode::unsupported, "unknown attack kind: " + k);
    }
    return quantize(out);
}

Image apply_attack(const Image& img, const std::string& spec_text) {
    return apply_attack(img, AttackSpec::parse(spec_text));
}

} // namespace wm
