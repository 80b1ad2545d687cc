/* cwm.h - C API for the circulant/SVD blind image watermarking library.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return WM_OK on success; on failure wm_last_error() carries a
 * human-readable message for the calling thread.
 */
#ifndef CWM_H
#define CWM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CWM_API __declspec(dllexport)
#else
#define CWM_API __attribute__((visibility("default")))
#endif

typedef enum wm_status {
    WM_OK = 0,
    WM_ERR_ARGUMENT = 1,    /* bad parameter or precondition violation */
    WM_ERR_IO = 2,          /* file not readable/writable */
    WM_ERR_FORMAT = 3,      /* unparseable or unsupported file contents */
    WM_ERR_DIMENSION = 4,   /* operand shapes disagree */
    WM_ERR_NUMERIC = 5,     /* numerical routine failed */
    WM_ERR_DEGENERATE = 6,  /* result undefined for this input */
    WM_ERR_UNSUPPORTED = 7  /* capability not available */
} wm_status;

typedef struct wm_image wm_image;   /* grayscale raster, real samples */
typedef struct wm_matrix wm_matrix; /* square real matrix (watermarks) */
typedef struct wm_key wm_key;       /* detection/extraction key */
typedef struct wm_report wm_report; /* detection report */

CWM_API const char* wm_version(void);
CWM_API const char* wm_status_name(wm_status status);
/* Message from the most recent failing call on this thread ("" if none). */
CWM_API const char* wm_last_error(void);

/* --- images --------------------------------------------------------------- */

/* Reads PGM (binary P5) or PNG; color PNG collapses to luma. */
CWM_API wm_status wm_image_load(const char* path, wm_image** out);
/* Writes by extension: .pgm/.pnm or .png. Samples are quantized on write. */
CWM_API wm_status wm_image_save(const wm_image* img, const char* path);
CWM_API wm_status wm_image_from_samples(int width, int height,
                                        const double* row_major, wm_image** out);
CWM_API void wm_image_free(wm_image* img);

CWM_API int wm_image_width(const wm_image* img);
CWM_API int wm_image_height(const wm_image* img);
CWM_API wm_status wm_image_copy_samples(const wm_image* img, double* out, size_t capacity);

/* Center-crop to the largest square with side divisible by 4. */
CWM_API wm_status wm_image_normalize(const wm_image* img, wm_image** out);
/* Round half away from zero, clamp to [0, 255]. */
CWM_API wm_status wm_image_quantize(const wm_image* img, wm_image** out);

/* --- watermarking ---------------------------------------------------------- */

/* Embeds a freshly generated k-block watermark. The host must be normalized
 * (square, side % 4 == 0). Outputs the unquantized marked image and the key.
 * A non-monotone singular-value profile is reported via wm_key_warning, not
 * as an error. */
CWM_API wm_status wm_embed(const wm_image* host, double alpha, int block_count,
                           uint64_t seed, wm_image** watermarked, wm_key** key);

/* Blind detection from (image, key) alone. tol <= 0 selects the default 0.05. */
CWM_API wm_status wm_detect(const wm_image* img, const wm_key* key, double tol,
                            wm_report** out);

/* Blind extraction of the carried watermark matrix. */
CWM_API wm_status wm_extract(const wm_image* img, const wm_key* key, wm_matrix** wstar);

/* --- keys ------------------------------------------------------------------ */

CWM_API wm_status wm_key_read(const char* path, wm_key** out);
/* Parses only what detection needs; coefficient blocks are ignored. */
CWM_API wm_status wm_key_read_detect_only(const char* path, wm_key** out);
CWM_API wm_status wm_key_write(const wm_key* key, const char* path);
CWM_API void wm_key_free(wm_key* key);

CWM_API double wm_key_alpha(const wm_key* key);
CWM_API int wm_key_blocks(const wm_key* key);
CWM_API int wm_key_side(const wm_key* key);
/* 1 when embedding recorded a non-monotone Y warning. */
CWM_API int wm_key_warning(const wm_key* key);
/* The embedded watermark matrix assembled from the key's blocks
 * (WM_ERR_DEGENERATE for detect-only keys). */
CWM_API wm_status wm_key_watermark(const wm_key* key, wm_matrix** w);

/* --- reports ---------------------------------------------------------------- */

CWM_API void wm_report_free(wm_report* report);
CWM_API int wm_report_detected(const wm_report* report);
CWM_API int wm_report_blocks(const wm_report* report);
CWM_API int wm_report_block_pass(const wm_report* report, int index);
/* Recovered x vector, 4k values. */
CWM_API wm_status wm_report_x(const wm_report* report, double* out, size_t capacity);
/* Watermark matrix rebuilt from the report's x (no extra SVD). */
CWM_API wm_status wm_report_extract(const wm_report* report, const wm_key* key,
                                    wm_matrix** wstar);

/* --- matrices --------------------------------------------------------------- */

CWM_API int wm_matrix_side(const wm_matrix* m);
CWM_API wm_status wm_matrix_copy(const wm_matrix* m, double* out, size_t capacity);
/* Affine rescale of the matrix range to [0, 255] for viewing. */
CWM_API wm_status wm_matrix_to_image(const wm_matrix* m, wm_image** out);
/* Plain text: side on the first line, then one row per line. */
CWM_API wm_status wm_matrix_write_text(const wm_matrix* m, const char* path);
CWM_API void wm_matrix_free(wm_matrix* m);

/* --- attacks and metrics ----------------------------------------------------- */

/* spec: "kind" or "kind:name=value,...". Kinds: none, jpeg, salt_pepper,
 * speckle, gaussian_noise, gaussian_filter, median_filter, average_filter,
 * sharpen, rotate, translate, crop_center, histeq, gamma, scale_cycle,
 * wiener. Input is quantized to 8 bits before the attack. */
CWM_API wm_status wm_attack(const wm_image* img, const char* spec, wm_image** out);

/* +infinity is reported when the images are identical. */
CWM_API wm_status wm_psnr(const wm_image* a, const wm_image* b, double* db);

/* nc_norm is the energy-normalized correlation in [-1, 1]; nc_raw the plain
 * mean product. WM_ERR_DEGENERATE when either matrix has zero energy (nc_raw
 * is still stored). */
CWM_API wm_status wm_nc(const wm_matrix* w, const wm_matrix* wp,
                        double* nc_norm, double* nc_raw);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CWM_H */
