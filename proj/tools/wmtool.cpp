// wmtool - command-line front end for the cwm watermarking library.
// Talks to the library exclusively through the C API in cwm.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cwm.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotDetected = 2;

struct ImageDeleter {
    void operator()(wm_image* p) const { wm_image_free(p); }
};
struct KeyDeleter {
    void operator()(wm_key* p) const { wm_key_free(p); }
};
struct ReportDeleter {
    void operator()(wm_report* p) const { wm_report_free(p); }
};
struct MatrixDeleter {
    void operator()(wm_matrix* p) const { wm_matrix_free(p); }
};
using ImagePtr = std::unique_ptr<wm_image, ImageDeleter>;
using KeyPtr = std::unique_ptr<wm_key, KeyDeleter>;
using ReportPtr = std::unique_ptr<wm_report, ReportDeleter>;
using MatrixPtr = std::unique_ptr<wm_matrix, MatrixDeleter>;

[[noreturn]] void die(const std::string& context) {
    std::cerr << "wmtool: " << context;
    const char* detail = wm_last_error();
    if (detail && *detail) std::cerr << ": " << detail;
    std::cerr << "\n";
    std::exit(kExitError);
}

void check(wm_status status, const std::string& context) {
    if (status != WM_OK) die(context + " (" + wm_status_name(status) + ")");
}

ImagePtr load_image_or_die(const std::string& path) {
    wm_image* img = nullptr;
    check(wm_image_load(path.c_str(), &img), "cannot load " + path);
    return ImagePtr(img);
}

ImagePtr maybe_quantize(ImagePtr img, bool quantized) {
    if (!quantized) return img;
    wm_image* q = nullptr;
    check(wm_image_quantize(img.get(), &q), "quantize");
    return ImagePtr(q);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("WM_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 42;
}

std::string fmt(double v, const char* format) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

std::string fmt_metric(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt(v, "%.4f");
}

// FNV-1a over a string; used to derive per-cell embed seeds.
std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

// --- embed -------------------------------------------------------------------

int cmd_embed(const std::string& in_path, const std::string& out_path,
              const std::string& key_path, double alpha, int blocks,
              std::uint64_t seed, bool quantized) {
    ImagePtr input = load_image_or_die(in_path);
    wm_image* normalized_raw = nullptr;
    check(wm_image_normalize(input.get(), &normalized_raw), "normalize " + in_path);
    ImagePtr host(normalized_raw);
    if (wm_image_width(host.get()) != wm_image_width(input.get()) ||
        wm_image_height(host.get()) != wm_image_height(input.get())) {
        std::cerr << "wmtool: note: input center-cropped to "
                  << wm_image_width(host.get()) << "x" << wm_image_height(host.get()) << "\n";
    }

    wm_image* marked_raw = nullptr;
    wm_key* key_raw = nullptr;
    const wm_status status = wm_embed(host.get(), alpha, blocks, seed, &marked_raw, &key_raw);
    if (status != WM_OK) die("embed failed: " + std::string(wm_last_error()));
    ImagePtr marked(marked_raw);
    KeyPtr key(key_raw);

    double db = 0.0;
    if (quantized) {
        wm_image* q = nullptr;
        check(wm_image_quantize(marked.get(), &q), "quantize");
        ImagePtr marked_q(q);
        check(wm_psnr(host.get(), marked_q.get(), &db), "psnr");
    } else {
        check(wm_psnr(host.get(), marked.get(), &db), "psnr");
    }

    check(wm_image_save(marked.get(), out_path.c_str()), "cannot write " + out_path);
    check(wm_key_write(key.get(), key_path.c_str()), "cannot write " + key_path);

    if (wm_key_warning(key.get()))
        std::cerr << "wmtool: warning: watermarked singular values are not strictly "
                     "decreasing; detection indexes may drift (flag recorded in key)\n";
    std::cout << "psnr " << fmt_metric(db) << " dB\n";
    return kExitOk;
}

// --- detect -------------------------------------------------------------------

int cmd_detect(const std::string& in_path, const std::string& key_path, double tol,
               bool quantized) {
    ImagePtr img = maybe_quantize(load_image_or_die(in_path), quantized);
    wm_key* key_raw = nullptr;
    check(wm_key_read_detect_only(key_path.c_str(), &key_raw), "cannot read key " + key_path);
    KeyPtr key(key_raw);

    wm_report* report_raw = nullptr;
    check(wm_detect(img.get(), key.get(), tol, &report_raw), "detect");
    ReportPtr report(report_raw);

    const int k = wm_report_blocks(report.get());
    std::vector<double> x(static_cast<size_t>(4 * k));
    check(wm_report_x(report.get(), x.data(), x.size()), "report");
    std::cout << "x";
    for (const double v : x) std::cout << " " << fmt(v, "%.6g");
    std::cout << "\n";
    for (int i = 0; i < k; ++i)
        std::cout << "block " << (i + 1) << " "
                  << (wm_report_block_pass(report.get(), i) ? "pass" : "fail") << "\n";
    const bool detected = wm_report_detected(report.get()) != 0;
    std::cout << (detected ? "detected" : "not detected") << "\n";
    return detected ? kExitOk : kExitNotDetected;
}

// --- extract -------------------------------------------------------------------

int cmd_extract(const std::string& in_path, const std::string& key_path,
                const std::string& out_path, bool quantized) {
    ImagePtr img = maybe_quantize(load_image_or_die(in_path), quantized);
    wm_key* key_raw = nullptr;
    check(wm_key_read(key_path.c_str(), &key_raw), "cannot read key " + key_path);
    KeyPtr key(key_raw);

    wm_matrix* wstar_raw = nullptr;
    check(wm_extract(img.get(), key.get(), &wstar_raw), "extract");
    MatrixPtr wstar(wstar_raw);

    wm_image* view_raw = nullptr;
    check(wm_matrix_to_image(wstar.get(), &view_raw), "render");
    ImagePtr view(view_raw);
    check(wm_image_save(view.get(), out_path.c_str()), "cannot write " + out_path);

    const std::string raw_path = out_path + ".txt";
    check(wm_matrix_write_text(wstar.get(), raw_path.c_str()), "cannot write " + raw_path);
    std::cout << "wrote " << out_path << " and " << raw_path << "\n";
    return kExitOk;
}

// --- attack --------------------------------------------------------------------

int cmd_attack(const std::string& in_path, const std::string& out_path,
               const std::string& spec, bool quantized) {
    ImagePtr img = maybe_quantize(load_image_or_die(in_path), quantized);
    wm_image* out_raw = nullptr;
    check(wm_attack(img.get(), spec.c_str(), &out_raw), "attack '" + spec + "'");
    ImagePtr out(out_raw);
    check(wm_image_save(out.get(), out_path.c_str()), "cannot write " + out_path);
    return kExitOk;
}

// --- bench ----------------------------------------------------------------------

struct BenchCell {
    std::string image_name;
    fs::path image_path;
    bool image_present = false;
    int k = 1;
    double alpha = 0.06;
    std::string attack;
};

struct BenchRow {
    std::string text;
    bool ok = false;
};

std::string bench_row(const BenchCell& cell, const std::string& status, double psnr_db,
                      double nc_norm, double nc_raw, int detected) {
    std::ostringstream out;
    out << cell.image_name << "\t" << cell.k << "\t" << fmt(cell.alpha, "%.4f") << "\t"
        << cell.attack << "\t" << status << "\t";
    if (status == "ok") {
        out << fmt_metric(psnr_db) << "\t" << fmt(nc_norm, "%.6f") << "\t"
            << fmt(nc_raw, "%.6f") << "\t" << detected;
    } else {
        out << "-\t-\t-\t-";
    }
    out << "\n";
    return out.str();
}

// One (image, k, alpha) group: embed once, then run every attack cell.
void run_group(const std::vector<BenchCell>& cells, size_t begin, size_t end,
               std::uint64_t global_seed, double tol, bool quantized,
               std::vector<BenchRow>& rows) {
    const BenchCell& head = cells[begin];
    auto mark_all = [&](const std::string& status) {
        for (size_t i = begin; i < end; ++i)
            rows[i].text = bench_row(cells[i], status, 0, 0, 0, 0);
    };
    if (!head.image_present) {
        mark_all("skipped");
        return;
    }

    wm_image* host_raw = nullptr;
    if (wm_image_load(head.image_path.string().c_str(), &host_raw) != WM_OK) {
        mark_all("skipped");
        return;
    }
    ImagePtr loaded(host_raw);
    wm_image* norm_raw = nullptr;
    if (wm_image_normalize(loaded.get(), &norm_raw) != WM_OK) {
        mark_all("skipped");
        return;
    }
    ImagePtr host(norm_raw);

    std::ostringstream seed_material;
    seed_material << global_seed << "|" << head.image_name << "|" << head.k << "|"
                  << fmt(head.alpha, "%.6f");
    const std::uint64_t embed_seed = fnv1a(seed_material.str());

    wm_image* marked_raw = nullptr;
    wm_key* key_raw = nullptr;
    if (wm_embed(host.get(), head.alpha, head.k, embed_seed, &marked_raw, &key_raw) != WM_OK) {
        mark_all("not run");
        return;
    }
    ImagePtr marked(marked_raw);
    KeyPtr key(key_raw);

    ImagePtr pipeline_input = std::move(marked);
    if (quantized) {
        wm_image* q = nullptr;
        if (wm_image_quantize(pipeline_input.get(), &q) != WM_OK) {
            mark_all("not run");
            return;
        }
        pipeline_input.reset(q);
    }

    wm_matrix* wref_raw = nullptr;
    if (wm_key_watermark(key.get(), &wref_raw) != WM_OK) {
        mark_all("not run");
        return;
    }
    MatrixPtr wref(wref_raw);

    for (size_t i = begin; i < end; ++i) {
        const BenchCell& cell = cells[i];
        ImagePtr attacked;
        if (cell.attack == "none") {
            // pass-through keeps the float path intact
            wm_image* copy = nullptr;
            const int w = wm_image_width(pipeline_input.get());
            const int h = wm_image_height(pipeline_input.get());
            std::vector<double> samples(static_cast<size_t>(w) * h);
            wm_image_copy_samples(pipeline_input.get(), samples.data(), samples.size());
            wm_image_from_samples(w, h, samples.data(), &copy);
            attacked.reset(copy);
        } else {
            wm_image* out = nullptr;
            if (wm_attack(pipeline_input.get(), cell.attack.c_str(), &out) != WM_OK) {
                rows[i].text = bench_row(cell, "not run", 0, 0, 0, 0);
                continue;
            }
            attacked.reset(out);
        }

        double psnr_db = 0.0;
        wm_psnr(host.get(), attacked.get(), &psnr_db);

        wm_report* report_raw = nullptr;
        if (wm_detect(attacked.get(), key.get(), tol, &report_raw) != WM_OK) {
            rows[i].text = bench_row(cell, "not run", 0, 0, 0, 0);
            continue;
        }
        ReportPtr report(report_raw);

        wm_matrix* wstar_raw = nullptr;
        if (wm_report_extract(report.get(), key.get(), &wstar_raw) != WM_OK) {
            rows[i].text = bench_row(cell, "not run", 0, 0, 0, 0);
            continue;
        }
        MatrixPtr wstar(wstar_raw);

        double nc_norm = 0.0, nc_raw = 0.0;
        const wm_status nc_status = wm_nc(wref.get(), wstar.get(), &nc_norm, &nc_raw);
        if (nc_status != WM_OK && nc_status != WM_ERR_DEGENERATE) {
            rows[i].text = bench_row(cell, "not run", 0, 0, 0, 0);
            continue;
        }
        rows[i].text = bench_row(cell, "ok", psnr_db, nc_norm, nc_raw,
                                 wm_report_detected(report.get()));
        rows[i].ok = true;
    }
}

int cmd_bench(const std::string& images_dir, const std::string& config_path,
              const std::string& report_path, bool quantized, int threads) {
    std::ifstream config_in(config_path);
    if (!config_in) die("cannot read config " + config_path);
    json config;
    try {
        config_in >> config;
    } catch (const std::exception& e) {
        die("config parse error: " + std::string(e.what()));
    }

    const std::uint64_t global_seed = config.value("seed", 42ull);
    const double tol = config.value("tol", 0.05);
    if (!config.contains("images") || !config["images"].is_array() || config["images"].empty())
        die("config lists no images");
    if (!config.contains("sweeps") || !config["sweeps"].is_array() || config["sweeps"].empty())
        die("config lists no sweeps");

    // enumerate cells in config order, grouped by (image, sweep, k, alpha)
    std::vector<BenchCell> cells;
    std::vector<std::pair<size_t, size_t>> groups;
    for (const auto& image_name : config["images"]) {
        const std::string name = image_name.get<std::string>();
        const fs::path path = fs::path(images_dir) / name;
        const bool present = fs::exists(path);
        for (const auto& sweep : config["sweeps"]) {
            for (const auto& k : sweep.value("k", std::vector<int>{1})) {
                for (const auto& alpha : sweep.value("alpha", std::vector<double>{0.06})) {
                    const size_t begin = cells.size();
                    for (const auto& attack : sweep.value("attacks", std::vector<std::string>{"none"})) {
                        BenchCell cell;
                        cell.image_name = name;
                        cell.image_path = path;
                        cell.image_present = present;
                        cell.k = k;
                        cell.alpha = alpha;
                        cell.attack = attack;
                        cells.push_back(cell);
                    }
                    if (cells.size() > begin) groups.emplace_back(begin, cells.size());
                }
            }
        }
    }
    if (cells.empty()) die("config produced an empty grid");

    std::vector<BenchRow> rows(cells.size());
    std::atomic<size_t> next{0};
    const int worker_count = std::max(1, threads);
    std::vector<std::thread> workers;
    for (int t = 0; t < worker_count; ++t)
        workers.emplace_back([&] {
            while (true) {
                const size_t g = next.fetch_add(1);
                if (g >= groups.size()) break;
                run_group(cells, groups[g].first, groups[g].second, global_seed, tol,
                          quantized, rows);
            }
        });
    for (auto& w : workers) w.join();

    std::ofstream out(report_path, std::ios::binary);
    if (!out) die("cannot write report " + report_path);
    out << "image\tk\talpha\tattack\tstatus\tpsnr_attacked\tnc_norm\tnc_raw\tdetected\n";
    size_t ok_rows = 0;
    for (const BenchRow& row : rows) {
        out << row.text;
        if (row.ok) ++ok_rows;
    }
    out.close();

    std::cout << "rows " << rows.size() << " ok " << ok_rows << " report " << report_path << "\n";
    if (ok_rows == 0) {
        std::cerr << "wmtool: no benchmark rows could be produced\n";
        return kExitError;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blind circulant/SVD image watermarking tool"};
    app.require_subcommand(1);

    bool quantized = false;
    bool float_path = false;
    app.add_flag("--quantized", quantized, "run the in-memory pipeline on 8-bit samples");
    app.add_flag("--float", float_path, "keep the in-memory pipeline in floats (default)");

    std::string in_path, out_path, key_path, spec, images_dir, config_path, report_path;
    double alpha = 0.06;
    int blocks = 1;
    std::uint64_t seed = default_seed();
    double tol = 0.05;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    CLI::App* embed = app.add_subcommand("embed", "embed a watermark and write image + key");
    embed->add_option("--in", in_path, "input image (pgm/png)")->required();
    embed->add_option("--out", out_path, "output watermarked image")->required();
    embed->add_option("--key", key_path, "output key file")->required();
    embed->add_option("--alpha", alpha, "scaling factor (default 0.06)");
    embed->add_option("--blocks", blocks, "number of watermark blocks (default 1)");
    embed->add_option("--seed", seed, "block-generation seed (env WM_SEED, then 42)");

    CLI::App* detect = app.add_subcommand("detect", "blind-detect a watermark (exit 0/2)");
    detect->add_option("--in", in_path, "image to test")->required();
    detect->add_option("--key", key_path, "key file")->required();
    detect->add_option("--tol", tol, "relative tolerance (default 0.05)");

    CLI::App* extract = app.add_subcommand("extract", "extract the watermark matrix");
    extract->add_option("--in", in_path, "watermarked image")->required();
    extract->add_option("--key", key_path, "key file")->required();
    extract->add_option("--out", out_path, "output image (raw matrix goes to <out>.txt)")->required();

    CLI::App* attack = app.add_subcommand("attack", "apply one attack to an image");
    attack->add_option("--in", in_path, "input image")->required();
    attack->add_option("--out", out_path, "output image")->required();
    attack->add_option("--spec", spec, "attack spec, e.g. jpeg:quality=50")->required();

    CLI::App* bench = app.add_subcommand("bench", "run the robustness/transparency grid");
    bench->add_option("--images", images_dir, "directory holding the test images")->required();
    bench->add_option("--config", config_path, "benchmark config (json)")->required();
    bench->add_option("--report", report_path, "output report (tsv)")->required();
    bench->add_option("--threads", threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    if (embed->parsed())
        return cmd_embed(in_path, out_path, key_path, alpha, blocks, seed, quantized);
    if (detect->parsed()) return cmd_detect(in_path, key_path, tol, quantized);
    if (extract->parsed()) return cmd_extract(in_path, key_path, out_path, quantized);
    if (attack->parsed()) return cmd_attack(in_path, out_path, spec, quantized);
    if (bench->parsed())
        return cmd_bench(images_dir, config_path, report_path, quantized, threads);
    return kExitError;
}
