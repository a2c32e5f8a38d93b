#include "seatplan/vision.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <png.h>

#include "seatplan/error.hpp"

namespace seatplan {

GrayImage::GrayImage(int w, int h, double fill)
    : width(w), height(h), data(static_cast<std::size_t>(std::max(w, 0)) * static_cast<std::size_t>(std::max(h, 0)), fill) {}

void validate(const GrayImage& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.data.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height))
        throw Error(ErrorCode::invalid_argument, "image data length does not match its dimensions");
}

GrayImage rotate_quarter(const GrayImage& img, int quarter_turns) {
    int turns = ((quarter_turns % 4) + 4) % 4;
    if (turns == 0) return img;
    bool swap = turns % 2 == 1;
    GrayImage out(swap ? img.height : img.width, swap ? img.width : img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int nx = 0, ny = 0;
            switch (turns) {
                case 1: nx = img.height - 1 - y; ny = x; break;
                case 2: nx = img.width - 1 - x; ny = img.height - 1 - y; break;
                case 3: nx = y; ny = img.width - 1 - x; break;
            }
            out.at(nx, ny) = img.at(x, y);
        }
    }
    return out;
}

void stamp(GrayImage& canvas, const GrayImage& patch, int x, int y) {
    for (int v = 0; v < patch.height; ++v) {
        for (int u = 0; u < patch.width; ++u) {
            int cx = x + u, cy = y + v;
            if (cx < 0 || cy < 0 || cx >= canvas.width || cy >= canvas.height) continue;
            canvas.at(cx, cy) = patch.at(u, v);
        }
    }
}

namespace {

struct TemplateStats {
    std::vector<double> centered;
    double norm = 0.0;  // sqrt of the sum of squared deviations
};

// Relative floor below which a window is treated as constant.
constexpr double kFlatWindowEps = 1e-9;

TemplateStats template_stats(const GrayImage& templ) {
    validate(templ);
    double n = static_cast<double>(templ.data.size());
    double mean = 0.0;
    for (double v : templ.data) mean += v;
    mean /= n;
    TemplateStats s;
    s.centered.reserve(templ.data.size());
    double ss = 0.0;
    for (double v : templ.data) {
        s.centered.push_back(v - mean);
        ss += (v - mean) * (v - mean);
    }
    if (ss <= kFlatWindowEps * n) throw Error(ErrorCode::invalid_template, "template has zero variance");
    s.norm = std::sqrt(ss);
    return s;
}

void check_sizes(const GrayImage& image, const GrayImage& templ) {
    validate(image);
    validate(templ);
    if (templ.width > image.width || templ.height > image.height)
        throw Error(ErrorCode::size, "template is larger than the image");
}

bool detection_order(const Detection& a, const Detection& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.bbox.min.x != b.bbox.min.x) return a.bbox.min.x < b.bbox.min.x;
    if (a.bbox.min.y != b.bbox.min.y) return a.bbox.min.y < b.bbox.min.y;
    if (a.bbox.max.x != b.bbox.max.x) return a.bbox.max.x < b.bbox.max.x;
    return a.bbox.max.y < b.bbox.max.y;
}

}  // namespace

double ncc_at(const GrayImage& image, const GrayImage& templ, int x, int y) {
    check_sizes(image, templ);
    if (x < 0 || y < 0 || x + templ.width > image.width || y + templ.height > image.height)
        throw Error(ErrorCode::invalid_argument, "window lies outside the image");
    TemplateStats ts = template_stats(templ);
    double n = static_cast<double>(templ.data.size());
    double mean = 0.0;
    for (int v = 0; v < templ.height; ++v)
        for (int u = 0; u < templ.width; ++u) mean += image.at(x + u, y + v);
    mean /= n;
    double num = 0.0, ss = 0.0;
    for (int v = 0; v < templ.height; ++v) {
        for (int u = 0; u < templ.width; ++u) {
            double d = image.at(x + u, y + v) - mean;
            num += d * ts.centered[static_cast<std::size_t>(v) * templ.width + u];
            ss += d * d;
        }
    }
    if (ss <= kFlatWindowEps * n) return 0.0;
    return std::clamp(num / (std::sqrt(ss) * ts.norm), -1.0, 1.0);
}

std::vector<Detection> match_template(const GrayImage& image, const GrayImage& templ, double threshold) {
    check_sizes(image, templ);
    TemplateStats ts = template_stats(templ);
    const int W = image.width, H = image.height, w = templ.width, h = templ.height;
    const double n = static_cast<double>(w) * h;

    // Integral images of value and squared value, (W+1) x (H+1).
    const std::size_t stride = static_cast<std::size_t>(W) + 1;
    std::vector<double> sum(stride * (H + 1), 0.0), sq(stride * (H + 1), 0.0);
    for (int y = 0; y < H; ++y) {
        double row = 0.0, row_sq = 0.0;
        for (int x = 0; x < W; ++x) {
            double v = image.at(x, y);
            row += v;
            row_sq += v * v;
            sum[(y + 1) * stride + x + 1] = sum[y * stride + x + 1] + row;
            sq[(y + 1) * stride + x + 1] = sq[y * stride + x + 1] + row_sq;
        }
    }
    auto box = [&](const std::vector<double>& t, int x, int y) {
        return t[(y + h) * stride + x + w] - t[y * stride + x + w] - t[(y + h) * stride + x] + t[y * stride + x];
    };

    const int rows = H - h + 1;
    auto scan = [&](int y0, int y1, std::vector<Detection>& out) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x + w <= W; ++x) {
                double s = box(sum, x, y);
                double var = box(sq, x, y) - s * s / n;
                if (var <= kFlatWindowEps * n) {
                    if (0.0 >= threshold) out.push_back({{{double(x), double(y)}, {double(x + w), double(y + h)}}, 0.0});
                    continue;
                }
                // The template is zero-mean, so the window mean drops out of the numerator.
                double num = 0.0;
                const double* tp = ts.centered.data();
                for (int v = 0; v < h; ++v) {
                    const double* ip = &image.data[static_cast<std::size_t>(y + v) * W + x];
                    for (int u = 0; u < w; ++u) num += ip[u] * tp[u];
                    tp += w;
                }
                double score = std::clamp(num / (std::sqrt(var) * ts.norm), -1.0, 1.0);
                if (score >= threshold)
                    out.push_back({{{double(x), double(y)}, {double(x + w), double(y + h)}}, score});
            }
        }
    };

    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    workers = std::min<unsigned>(workers, static_cast<unsigned>(rows));
    std::vector<std::vector<Detection>> parts(workers);
    if (workers == 1) {
        scan(0, rows, parts[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < workers; ++k) {
            int y0 = static_cast<int>(static_cast<long long>(rows) * k / workers);
            int y1 = static_cast<int>(static_cast<long long>(rows) * (k + 1) / workers);
            pool.emplace_back(scan, y0, y1, std::ref(parts[k]));
        }
        for (auto& t : pool) t.join();
    }
    std::vector<Detection> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end(), detection_order);
    return all;
}

std::vector<Detection> match_template_rotations(const GrayImage& image, const GrayImage& templ, double threshold,
                                                const std::vector<int>& quarter_turns) {
    std::vector<Detection> all;
    for (int turns : quarter_turns) {
        GrayImage rotated = rotate_quarter(templ, turns);
        if (rotated.width > image.width || rotated.height > image.height) continue;
        auto hits = match_template(image, rotated, threshold);
        all.insert(all.end(), hits.begin(), hits.end());
    }
    std::sort(all.begin(), all.end(), detection_order);
    return all;
}

std::vector<Detection> suppress(std::vector<Detection> detections, double max_overlap) {
    if (!(max_overlap >= 0.0 && max_overlap < 1.0))
        throw Error(ErrorCode::invalid_argument, "max_overlap must lie in [0, 1)");
    std::sort(detections.begin(), detections.end(), detection_order);
    std::vector<Detection> kept;
    for (const auto& d : detections) {
        bool clash = std::any_of(kept.begin(), kept.end(), [&](const Detection& k) {
            return intersection_over_union(k.bbox, d.bbox) > max_overlap;
        });
        if (!clash) kept.push_back(d);
    }
    return kept;
}

Floorplan detections_to_floorplan(std::vector<Detection> detections, const ScaleTransform& t) {
    validate(t);
    if (detections.empty()) throw Error(ErrorCode::empty_floorplan, "no detections to convert");
    std::sort(detections.begin(), detections.end(), detection_order);
    Floorplan fp;
    fp.source = FloorplanSource::raster;
    for (std::size_t k = 0; k < detections.size(); ++k)
        fp.workspaces.push_back(Workspace::make("det-" + std::to_string(k), rescale(detections[k].bbox, t), "WORKSPACE"));
    return fp;
}

// ---------------------------------------------------------------------------
// Raster I/O

namespace {

std::string next_token(std::istream& in) {
    std::string tok;
    char ch;
    while (in.get(ch)) {
        if (ch == '#') {
            std::string skip;
            std::getline(in, skip);
            if (!tok.empty()) break;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!tok.empty()) break;
            continue;
        }
        tok += ch;
    }
    return tok;
}

GrayImage read_netpbm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse, "cannot open raster '" + path + "'");
    std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5" && magic != "P3" && magic != "P6")
        throw Error(ErrorCode::parse, "unsupported netpbm variant in '" + path + "'");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(next_token(in));
        h = std::stoi(next_token(in));
        maxval = std::stoi(next_token(in));
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse, "malformed netpbm header in '" + path + "'");
    }
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw Error(ErrorCode::parse, "invalid netpbm dimensions in '" + path + "'");
    bool color = magic == "P3" || magic == "P6";
    bool binary = magic == "P5" || magic == "P6";
    int channels = color ? 3 : 1;
    GrayImage img(w, h);
    std::vector<double> px(static_cast<std::size_t>(channels));
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        for (int c = 0; c < channels; ++c) {
            int v = 0;
            if (binary) {
                unsigned char b[2] = {0, 0};
                in.read(reinterpret_cast<char*>(b), maxval > 255 ? 2 : 1);
                v = maxval > 255 ? (b[0] << 8) | b[1] : b[0];
            } else {
                std::string tok = next_token(in);
                if (tok.empty()) throw Error(ErrorCode::parse, "truncated netpbm data in '" + path + "'");
                v = std::stoi(tok);
            }
            if (!in) throw Error(ErrorCode::parse, "truncated netpbm data in '" + path + "'");
            px[static_cast<std::size_t>(c)] = static_cast<double>(v) / maxval;
        }
        img.data[i] = color ? 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2] : px[0];
    }
    return img;
}

GrayImage read_png(const std::string& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw Error(ErrorCode::parse, "cannot read PNG '" + path + "': " + image.message);
    image.format = PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&image);
        throw Error(ErrorCode::parse, "cannot decode PNG '" + path + "': " + image.message);
    }
    GrayImage img(static_cast<int>(image.width), static_cast<int>(image.height));
    for (std::size_t i = 0; i < img.data.size(); ++i) img.data[i] = buffer[i] / 255.0;
    return img;
}

}  // namespace

GrayImage read_raster(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw Error(ErrorCode::parse, "cannot open raster '" + path + "'");
    char sig[8] = {};
    probe.read(sig, 8);
    static const unsigned char kPng[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (probe.gcount() == 8 && std::equal(sig, sig + 8, reinterpret_cast<const char*>(kPng))) return read_png(path);
    if (probe.gcount() >= 2 && sig[0] == 'P') return read_netpbm(path);
    throw Error(ErrorCode::parse, "unrecognized raster format in '" + path + "'");
}

void write_pgm(const GrayImage& img, const std::string& path) {
    validate(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::parse, "cannot write '" + path + "'");
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    for (double v : img.data) {
        auto b = static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
        out.put(static_cast<char>(b));
    }
}

}  // namespace seatplan
