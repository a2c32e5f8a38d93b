#pragma once

#include <string>
#include <vector>

#include "seatplan/geometry.hpp"
#include "seatplan/ingest.hpp"

namespace seatplan {

/// Row-major luminance image with values in [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0);

    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

void validate(const GrayImage& img);

/// Rotates clockwise by `quarter_turns` * 90 degrees.
GrayImage rotate_quarter(const GrayImage& img, int quarter_turns);

/// Pastes `patch` with its top-left corner at (x, y); out-of-range pixels are clipped.
void stamp(GrayImage& canvas, const GrayImage& patch, int x, int y);

struct Detection {
    BoundingBox bbox;  // pixel units
    double score = 0.0;
};

/// Normalized cross-correlation of `templ` against the window of `image` whose
/// top-left corner is (x, y). Windows with zero variance score 0.
double ncc_at(const GrayImage& image, const GrayImage& templ, int x, int y);

/// Every window position whose NCC score is >= threshold. Ordered by
/// (score desc, x, y).
std::vector<Detection> match_template(const GrayImage& image, const GrayImage& templ, double threshold);

/// Runs `match_template` for the template rotated by each entry of
/// `quarter_turns` and merges the hits before suppression.
std::vector<Detection> match_template_rotations(const GrayImage& image, const GrayImage& templ, double threshold,
                                                const std::vector<int>& quarter_turns);

/// Greedy non-maximum suppression on intersection-over-union.
std::vector<Detection> suppress(std::vector<Detection> detections, double max_overlap);

/// One workspace per detection, ids "det-{k}" by score descending, position
/// (x then y) breaking ties.
Floorplan detections_to_floorplan(std::vector<Detection> detections, const ScaleTransform& t);

// Raster decode adapter: binary/ASCII PGM and PPM, plus PNG.
GrayImage read_raster(const std::string& path);
void write_pgm(const GrayImage& img, const std::string& path);

}  // namespace seatplan
