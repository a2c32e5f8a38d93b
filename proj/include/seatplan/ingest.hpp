#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "seatplan/geometry.hpp"

namespace seatplan {

enum class LengthUnit { inches, centimeters };
enum class FloorplanSource { vector, raster, metadata, synthetic };

const char* to_string(LengthUnit u);
const char* to_string(FloorplanSource s);

struct Workspace {
    std::string id;
    BoundingBox bbox;
    Point centroid;
    std::optional<std::string> tag;

    static Workspace make(std::string id, BoundingBox bbox, std::optional<std::string> tag = std::nullopt);
};

struct Floorplan {
    std::vector<Workspace> workspaces;
    LengthUnit units = LengthUnit::inches;
    FloorplanSource source = FloorplanSource::synthetic;
    std::optional<std::string> background;

    std::size_t size() const { return workspaces.size(); }
};

/// Checks id uniqueness, centroid consistency and non-emptiness.
void validate(const Floorplan& fp);

struct SizeFilter {
    double min_side = 20.0;
    double max_side = 120.0;

    bool accepts(const BoundingBox& b) const;
};

void validate(const SizeFilter& f);

// Vector (SVG) documents ----------------------------------------------------

/// Extracts one workspace per closed rect, polygon, closed polyline, or closed
/// path sub-path whose rescaled bounding box passes `filter`. Ids are "ws-{k}"
/// in document order of the surviving shapes.
Floorplan parse_vector(std::string_view svg, const SizeFilter& filter, const ScaleTransform& t);

// Tabular metadata ------------------------------------------------------------

struct MetadataRecord {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::string tag;
};

/// Parses "id,x,y,width,height,tag" CSV with a header row. Errors carry the
/// 1-based data row index.
std::vector<MetadataRecord> parse_metadata_csv(std::string_view text);

Floorplan load_metadata(const std::vector<MetadataRecord>& records, const std::set<std::string>& keep_tags);

// Synthetic layouts -------------------------------------------------------------

struct GridSpec {
    int rows = 1;
    int cols = 1;
    double pitch_x = 60.0;
    double pitch_y = 60.0;
    double desk_w = 60.0;
    double desk_h = 60.0;
    int aisle_every = 0;  // 0 disables aisles
    double aisle_width = 0.0;
    double jitter = 0.0;  // uniform per-desk offset in [-jitter, jitter] on each axis
    int limit = 0;        // keep only the first `limit` desks in row-major order; 0 keeps all
};

Floorplan generate_synthetic(const GridSpec& spec, std::uint64_t seed);

}  // namespace seatplan
