#include "cwm.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "wm/attacks.hpp"
#include "wm/codec.hpp"
#include "wm/error.hpp"
#include "wm/image_io.hpp"
#include "wm/keyfile.hpp"
#include "wm/metrics.hpp"

struct wm_image {
    wm::Image img;
};
struct wm_matrix {
    wm::Matrix m;
};
struct wm_key {
    wm::WatermarkKey key;
};
struct wm_report {
    wm::DetectionReport report;
};

namespace {

thread_local std::string g_last_error;

wm_status map_code(wm::ErrorCode code) {
    switch (code) {
        case wm::ErrorCode::argument: return WM_ERR_ARGUMENT;
        case wm::ErrorCode::io: return WM_ERR_IO;
        case wm::ErrorCode::format: return WM_ERR_FORMAT;
        case wm::ErrorCode::dimension: return WM_ERR_DIMENSION;
        case wm::ErrorCode::numeric: return WM_ERR_NUMERIC;
        case wm::ErrorCode::degenerate: return WM_ERR_DEGENERATE;
        case wm::ErrorCode::unsupported: return WM_ERR_UNSUPPORTED;
    }
    return WM_ERR_NUMERIC;
}

template <typename Fn>
wm_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return WM_OK;
    } catch (const wm::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return WM_ERR_NUMERIC;
    }
}

wm_status fail_argument(const char* message) {
    g_last_error = message;
    return WM_ERR_ARGUMENT;
}

} // namespace

extern "C" {

const char* wm_version(void) { return "1.0.0"; }

const char* wm_status_name(wm_status status) {
    switch (status) {
        case WM_OK: return "ok";
        case WM_ERR_ARGUMENT: return "argument";
        case WM_ERR_IO: return "io";
        case WM_ERR_FORMAT: return "format";
        case WM_ERR_DIMENSION: return "dimension";
        case WM_ERR_NUMERIC: return "numeric";
        case WM_ERR_DEGENERATE: return "degenerate";
        case WM_ERR_UNSUPPORTED: return "unsupported";
    }
    return "unknown";
}

const char* wm_last_error(void) { return g_last_error.c_str(); }

/* --- images --------------------------------------------------------------- */

wm_status wm_image_load(const char* path, wm_image** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] { *out = new wm_image{wm::load_image(path)}; });
}

wm_status wm_image_save(const wm_image* img, const char* path) {
    if (!img || !path) return fail_argument("null argument");
    return guarded([&] { wm::save_image(img->img, path); });
}

wm_status wm_image_from_samples(int width, int height, const double* row_major,
                                wm_image** out) {
    if (!row_major || !out) return fail_argument("null argument");
    return guarded([&] {
        if (width <= 0 || height <= 0)
            wm::fail(wm::ErrorCode::argument, "dimensions must be positive");
        std::vector<double> samples(row_major,
                                    row_major + static_cast<size_t>(width) * height);
        *out = new wm_image{wm::Image(width, height, std::move(samples))};
    });
}

void wm_image_free(wm_image* img) { delete img; }

int wm_image_width(const wm_image* img) { return img ? img->img.width() : 0; }
int wm_image_height(const wm_image* img) { return img ? img->img.height() : 0; }

wm_status wm_image_copy_samples(const wm_image* img, double* out, size_t capacity) {
    if (!img || !out) return fail_argument("null argument");
    if (capacity < img->img.pixel_count()) return fail_argument("buffer too small");
    std::copy(img->img.data(), img->img.data() + img->img.pixel_count(), out);
    g_last_error.clear();
    return WM_OK;
}

wm_status wm_image_normalize(const wm_image* img, wm_image** out) {
    if (!img || !out) return fail_argument("null argument");
    return guarded([&] { *out = new wm_image{wm::normalize_geometry(img->img)}; });
}

wm_status wm_image_quantize(const wm_image* img, wm_image** out) {
    if (!img || !out) return fail_argument("null argument");
    return guarded([&] { *out = new wm_image{wm::quantize(img->img)}; });
}

/* --- watermarking ----------------------------------------------------------- */

wm_status wm_embed(const wm_image* host, double alpha, int block_count, uint64_t seed,
                   wm_image** watermarked, wm_key** key) {
    if (!host || !watermarked || !key) return fail_argument("null argument");
    return guarded([&] {
        if (block_count < 1)
            wm::fail(wm::ErrorCode::argument, "block count must be >= 1");
        if (4 * block_count > host->img.width())
            wm::fail(wm::ErrorCode::argument, "too many blocks");
        wm::WatermarkSpec spec{wm::generate_blocks(seed, block_count), host->img.width()};
        wm::EmbedResult result = wm::embed(host->img, spec, alpha);
        *watermarked = new wm_image{std::move(result.watermarked)};
        *key = new wm_key{std::move(result.key)};
    });
}

wm_status wm_detect(const wm_image* img, const wm_key* key, double tol, wm_report** out) {
    if (!img || !key || !out) return fail_argument("null argument");
    return guarded([&] {
        const double t = tol > 0.0 ? tol : wm::kDefaultDetectTol;
        *out = new wm_report{wm::detect(img->img, key->key, t)};
    });
}

wm_status wm_extract(const wm_image* img, const wm_key* key, wm_matrix** wstar) {
    if (!img || !key || !wstar) return fail_argument("null argument");
    return guarded([&] { *wstar = new wm_matrix{wm::extract(img->img, key->key)}; });
}

/* --- keys -------------------------------------------------------------------- */

wm_status wm_key_read(const char* path, wm_key** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] { *out = new wm_key{wm::read_key(path, true)}; });
}

wm_status wm_key_read_detect_only(const char* path, wm_key** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] { *out = new wm_key{wm::read_key(path, false)}; });
}

wm_status wm_key_write(const wm_key* key, const char* path) {
    if (!key || !path) return fail_argument("null argument");
    return guarded([&] { wm::write_key(key->key, path); });
}

void wm_key_free(wm_key* key) { delete key; }

double wm_key_alpha(const wm_key* key) { return key ? key->key.alpha : 0.0; }
int wm_key_blocks(const wm_key* key) { return key ? key->key.block_count : 0; }
int wm_key_side(const wm_key* key) { return key ? key->key.image_side : 0; }
int wm_key_warning(const wm_key* key) {
    return key && key->key.y_monotone_warning ? 1 : 0;
}

wm_status wm_key_watermark(const wm_key* key, wm_matrix** w) {
    if (!key || !w) return fail_argument("null argument");
    return guarded([&] { *w = new wm_matrix{wm::key_watermark(key->key)}; });
}

/* --- reports ------------------------------------------------------------------ */

void wm_report_free(wm_report* report) { delete report; }

int wm_report_detected(const wm_report* report) {
    return report && report->report.detected ? 1 : 0;
}

int wm_report_blocks(const wm_report* report) {
    return report ? static_cast<int>(report->report.block_pass.size()) : 0;
}

int wm_report_block_pass(const wm_report* report, int index) {
    if (!report || index < 0 ||
        index >= static_cast<int>(report->report.block_pass.size()))
        return 0;
    return report->report.block_pass[static_cast<size_t>(index)] ? 1 : 0;
}

wm_status wm_report_x(const wm_report* report, double* out, size_t capacity) {
    if (!report || !out) return fail_argument("null argument");
    if (capacity < report->report.x.size()) return fail_argument("buffer too small");
    std::copy(report->report.x.begin(), report->report.x.end(), out);
    g_last_error.clear();
    return WM_OK;
}

wm_status wm_report_extract(const wm_report* report, const wm_key* key, wm_matrix** wstar) {
    if (!report || !key || !wstar) return fail_argument("null argument");
    return guarded([&] {
        *wstar = new wm_matrix{wm::extract_from_x(report->report.x, key->key.image_side)};
    });
}

/* --- matrices ------------------------------------------------------------------ */

int wm_matrix_side(const wm_matrix* m) { return m ? m->m.rows() : 0; }

wm_status wm_matrix_copy(const wm_matrix* m, double* out, size_t capacity) {
    if (!m || !out) return fail_argument("null argument");
    if (capacity < m->m.size()) return fail_argument("buffer too small");
    std::copy(m->m.data(), m->m.data() + m->m.size(), out);
    g_last_error.clear();
    return WM_OK;
}

wm_status wm_matrix_to_image(const wm_matrix* m, wm_image** out) {
    if (!m || !out) return fail_argument("null argument");
    return guarded([&] {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < m->m.size(); ++i) {
            lo = std::min(lo, m->m.data()[i]);
            hi = std::max(hi, m->m.data()[i]);
        }
        wm::Image img(m->m.cols(), m->m.rows());
        const double span = hi - lo;
        for (size_t i = 0; i < m->m.size(); ++i)
            img.data()[i] = span > 0.0 ? (m->m.data()[i] - lo) / span * 255.0 : 0.0;
        *out = new wm_image{wm::quantize(img)};
    });
}

wm_status wm_matrix_write_text(const wm_matrix* m, const char* path) {
    if (!m || !path) return fail_argument("null argument");
    return guarded([&] {
        std::ofstream out(path);
        if (!out) wm::fail(wm::ErrorCode::io, std::string("cannot open for writing: ") + path);
        out << m->m.rows() << "\n";
        char buf[64];
        for (int r = 0; r < m->m.rows(); ++r) {
            for (int c = 0; c < m->m.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g", m->m.at(r, c));
                out << (c ? " " : "") << buf;
            }
            out << "\n";
        }
        if (!out) wm::fail(wm::ErrorCode::io, std::string("write failed: ") + path);
    });
}

void wm_matrix_free(wm_matrix* m) { delete m; }

/* --- attacks and metrics --------------------------------------------------------- */

wm_status wm_attack(const wm_image* img, const char* spec, wm_image** out) {
    if (!img || !spec || !out) return fail_argument("null argument");
    return guarded([&] { *out = new wm_image{wm::apply_attack(img->img, spec)}; });
}

wm_status wm_psnr(const wm_image* a, const wm_image* b, double* db) {
    if (!a || !b || !db) return fail_argument("null argument");
    return guarded([&] { *db = wm::psnr(a->img, b->img); });
}

wm_status wm_nc(const wm_matrix* w, const wm_matrix* wp, double* nc_norm, double* nc_raw) {
    if (!w || !wp) return fail_argument("null argument");
    wm::SimilarityScore score;
    const wm_status status = guarded([&] { score = wm::nc(w->m, wp->m); });
    if (status != WM_OK) return status;
    if (nc_raw) *nc_raw = score.nc_raw;
    if (score.nc_norm.has_value()) {
        if (nc_norm) *nc_norm = *score.nc_norm;
        return WM_OK;
    }
    if (nc_norm) *nc_norm = 0.0;
    g_last_error = "nc_norm undefined for zero-energy input";
    return WM_ERR_DEGENERATE;
}

} /* extern "C" */
