#include "seatplan/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "seatplan/error.hpp"
#include "seatplan/random.hpp"

namespace seatplan {

const char* to_string(LengthUnit u) {
    return u == LengthUnit::inches ? "inches" : "centimeters";
}

const char* to_string(FloorplanSource s) {
    switch (s) {
        case FloorplanSource::vector: return "vector";
        case FloorplanSource::raster: return "raster";
        case FloorplanSource::metadata: return "metadata";
        case FloorplanSource::synthetic: return "synthetic";
    }
    return "unknown";
}

Workspace Workspace::make(std::string id, BoundingBox bbox, std::optional<std::string> tag) {
    validate(bbox);
    Workspace ws{std::move(id), bbox, seatplan::centroid(bbox), std::move(tag)};
    return ws;
}

void validate(const Floorplan& fp) {
    if (fp.workspaces.empty()) throw Error(ErrorCode::empty_floorplan, "floorplan has no workspaces");
    std::unordered_set<std::string> seen;
    for (const auto& ws : fp.workspaces) {
        if (!seen.insert(ws.id).second) throw Error(ErrorCode::duplicate_id, "duplicate workspace id '" + ws.id + "'");
        validate(ws.bbox);
        Point c = seatplan::centroid(ws.bbox);
        if (std::abs(c.x - ws.centroid.x) > 1e-9 * (1.0 + std::abs(c.x)) ||
            std::abs(c.y - ws.centroid.y) > 1e-9 * (1.0 + std::abs(c.y)))
            throw Error(ErrorCode::invalid_argument, "centroid of '" + ws.id + "' does not match its bounding box");
    }
}

bool SizeFilter::accepts(const BoundingBox& b) const {
    return b.width() >= min_side && b.width() <= max_side && b.height() >= min_side && b.height() <= max_side;
}

void validate(const SizeFilter& f) {
    if (!(std::isfinite(f.min_side) && std::isfinite(f.max_side) && f.min_side > 0.0 && f.min_side <= f.max_side))
        throw Error(ErrorCode::invalid_argument, "size filter requires 0 < min_side <= max_side");
}

// ---------------------------------------------------------------------------
// SVG

namespace {

using boost::property_tree::ptree;

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip_separators() {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ',')) ++pos;
    }
    bool done() {
        skip_separators();
        return pos >= s.size();
    }
    bool peek_number() {
        skip_separators();
        if (pos >= s.size()) return false;
        char c = s[pos];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
    }
    double number() {
        skip_separators();
        if (pos < s.size() && s[pos] == '+') ++pos;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
        if (ec != std::errc())
            throw Error(ErrorCode::parse, "expected a number at offset " + std::to_string(pos) + " in '" + std::string(s) + "'");
        pos = static_cast<std::size_t>(ptr - s.data());
        if (!std::isfinite(v)) throw Error(ErrorCode::parse, "non-finite number in '" + std::string(s) + "'");
        return v;
    }
    // Arc flags may be packed without separators ("a5 5 0 011 10 10").
    bool flag() {
        skip_separators();
        if (pos >= s.size() || (s[pos] != '0' && s[pos] != '1'))
            throw Error(ErrorCode::parse, "expected arc flag in path data");
        return s[pos++] == '1';
    }
};

double parse_length(const std::string& text) {
    std::string_view v(text);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || !std::isfinite(out)) throw Error(ErrorCode::parse, "invalid length '" + text + "'");
    std::string_view unit(ptr, static_cast<std::size_t>(v.data() + v.size() - ptr));
    if (!unit.empty() && unit != "px")
        throw Error(ErrorCode::parse, "unsupported length unit in '" + text + "'");
    return out;
}

std::optional<std::string> attribute(const ptree& node, const char* name) {
    if (auto attrs = node.get_child_optional("<xmlattr>")) {
        if (auto v = attrs->get_optional<std::string>(name)) return *v;
    }
    return std::nullopt;
}

double length_attr(const ptree& node, const char* name) {
    auto v = attribute(node, name);
    return v ? parse_length(*v) : 0.0;
}

Point parse_translate(const std::string& text) {
    Point offset;
    std::string_view s(text);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ',')) ++pos;
    };
    skip();
    while (pos < s.size()) {
        std::size_t open = s.find('(', pos);
        std::size_t close = s.find(')', pos);
        if (open == std::string_view::npos || close == std::string_view::npos || close < open)
            throw Error(ErrorCode::parse, "malformed transform '" + text + "'");
        std::string_view name = s.substr(pos, open - pos);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
        Cursor args{s.substr(open + 1, close - open - 1)};
        std::vector<double> values;
        while (!args.done()) values.push_back(args.number());
        if (name == "translate" && (values.size() == 1 || values.size() == 2)) {
            offset.x += values[0];
            offset.y += values.size() == 2 ? values[1] : 0.0;
        } else if (name == "matrix" && values.size() == 6 && values[0] == 1.0 && values[1] == 0.0 && values[2] == 0.0 &&
                   values[3] == 1.0) {
            offset.x += values[4];
            offset.y += values[5];
        } else {
            throw Error(ErrorCode::parse, "only translate transforms are supported, got '" + text + "'");
        }
        pos = close + 1;
        skip();
    }
    return offset;
}

std::vector<Point> parse_points(const std::string& text) {
    Cursor c{text};
    std::vector<Point> pts;
    while (!c.done()) {
        double x = c.number();
        if (c.done()) throw Error(ErrorCode::parse, "odd coordinate count in points '" + text + "'");
        double y = c.number();
        pts.push_back({x, y});
    }
    return pts;
}

BoundingBox bounds_of(const std::vector<Point>& pts) {
    BoundingBox b{pts.front(), pts.front()};
    for (const auto& p : pts) {
        b.min.x = std::min(b.min.x, p.x);
        b.min.y = std::min(b.min.y, p.y);
        b.max.x = std::max(b.max.x, p.x);
        b.max.y = std::max(b.max.y, p.y);
    }
    return b;
}

// Returns the control polygon of every closed sub-path in `d`.
std::vector<std::vector<Point>> closed_subpaths(const std::string& d) {
    std::vector<std::vector<Point>> closed;
    std::vector<Point> current;
    Cursor c{d};
    Point pen, start;
    char cmd = 0;

    auto begin_if_needed = [&] {
        if (current.empty()) current.push_back(pen);
    };

    while (!c.done()) {
        char ch = c.s[c.pos];
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            cmd = ch;
            ++c.pos;
        } else if (cmd == 0) {
            throw Error(ErrorCode::parse, "path data must start with a command: '" + d + "'");
        } else if (cmd == 'M') {
            cmd = 'L';  // implicit lineto after moveto
        } else if (cmd == 'm') {
            cmd = 'l';
        } else if (cmd == 'Z' || cmd == 'z') {
            throw Error(ErrorCode::parse, "unexpected number after closepath in '" + d + "'");
        }
        bool rel = std::islower(static_cast<unsigned char>(cmd)) != 0;
        Point base = rel ? pen : Point{0.0, 0.0};
        auto read_point = [&] {
            double x = c.number();
            double y = c.number();
            return Point{base.x + x, base.y + y};
        };
        switch (std::toupper(static_cast<unsigned char>(cmd))) {
            case 'M':
                current.clear();
                pen = read_point();
                start = pen;
                current.push_back(pen);
                break;
            case 'L':
            case 'T':
                begin_if_needed();
                pen = read_point();
                current.push_back(pen);
                break;
            case 'H':
                begin_if_needed();
                pen.x = base.x + c.number();
                current.push_back(pen);
                break;
            case 'V':
                begin_if_needed();
                pen.y = base.y + c.number();
                current.push_back(pen);
                break;
            case 'C': {
                begin_if_needed();
                Point c1 = read_point();
                Point c2 = read_point();
                pen = read_point();
                current.insert(current.end(), {c1, c2, pen});
                break;
            }
            case 'S':
            case 'Q': {
                begin_if_needed();
                Point c1 = read_point();
                pen = read_point();
                current.insert(current.end(), {c1, pen});
                break;
            }
            case 'A': {
                begin_if_needed();
                c.number();
                c.number();
                c.number();
                c.flag();
                c.flag();
                pen = read_point();
                current.push_back(pen);
                break;
            }
            case 'Z':
                if (!current.empty()) closed.push_back(current);
                current.clear();
                pen = start;
                break;
            default:
                throw Error(ErrorCode::parse, std::string("unsupported path command '") + cmd + "'");
        }
    }
    return closed;
}

bool is_hidden_container(const std::string& name) {
    return name == "defs" || name == "symbol" || name == "clipPath" || name == "mask" || name == "pattern" ||
           name == "marker";
}

std::string local_name(const std::string& name) {
    auto colon = name.find(':');
    return colon == std::string::npos ? name : name.substr(colon + 1);
}

struct VectorWalker {
    const SizeFilter& filter;
    const ScaleTransform& scale;
    Floorplan out;

    void shape(BoundingBox b, Point offset) {
        b.min.x += offset.x;
        b.max.x += offset.x;
        b.min.y += offset.y;
        b.max.y += offset.y;
        BoundingBox scaled = rescale(b, scale);
        if (!filter.accepts(scaled)) return;
        out.workspaces.push_back(Workspace::make("ws-" + std::to_string(out.workspaces.size()), scaled, "WORKSPACE"));
    }

    void walk(const ptree& node, Point offset) {
        for (const auto& [raw_name, child] : node) {
            if (raw_name == "<xmlattr>" || raw_name == "<xmlcomment>" || raw_name == "<xmltext>") continue;
            std::string name = local_name(raw_name);
            if (is_hidden_container(name)) continue;
            Point local = offset;
            if (auto tf = attribute(child, "transform")) {
                Point t = parse_translate(*tf);
                local.x += t.x;
                local.y += t.y;
            }
            if (name == "rect") {
                double x = length_attr(child, "x"), y = length_attr(child, "y");
                double w = length_attr(child, "width"), h = length_attr(child, "height");
                if (w < 0.0 || h < 0.0) throw Error(ErrorCode::parse, "rect with negative size");
                shape({{x, y}, {x + w, y + h}}, local);
            } else if (name == "polygon" || name == "polyline") {
                auto pts = parse_points(attribute(child, "points").value_or(""));
                if (pts.size() < 3) continue;
                bool closed = name == "polygon" || (std::abs(pts.front().x - pts.back().x) < 1e-9 &&
                                                    std::abs(pts.front().y - pts.back().y) < 1e-9);
                if (closed) shape(bounds_of(pts), local);
            } else if (name == "path") {
                for (const auto& sub : closed_subpaths(attribute(child, "d").value_or(""))) shape(bounds_of(sub), local);
            } else {
                walk(child, local);
            }
        }
    }
};

}  // namespace

Floorplan parse_vector(std::string_view svg, const SizeFilter& filter, const ScaleTransform& t) {
    validate(filter);
    validate(t);
    ptree doc;
    try {
        std::istringstream in{std::string(svg)};
        boost::property_tree::read_xml(in, doc);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw Error(ErrorCode::parse, std::string("malformed vector document: ") + e.what());
    }
    bool has_svg_root = false;
    for (const auto& [name, child] : doc) {
        (void)child;
        if (local_name(name) == "svg") has_svg_root = true;
    }
    if (!has_svg_root) throw Error(ErrorCode::parse, "document has no <svg> root element");

    VectorWalker walker{filter, t, {}};
    walker.out.source = FloorplanSource::vector;
    walker.walk(doc, {0.0, 0.0});
    if (walker.out.workspaces.empty())
        throw Error(ErrorCode::empty_floorplan, "no shapes in the vector document passed the size filter");
    return std::move(walker.out);
}

// ---------------------------------------------------------------------------
// CSV metadata

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    if (quoted) throw Error(ErrorCode::parse, "row " + std::to_string(row) + ": unterminated quote");
    fields.push_back(trim(field));
    return fields;
}

double parse_field(const std::string& text, std::size_t row, const char* column) {
    double v = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw Error(ErrorCode::parse,
                    "row " + std::to_string(row) + ": column '" + column + "' is not a number ('" + text + "')");
    return v;
}

}  // namespace

std::vector<MetadataRecord> parse_metadata_csv(std::string_view text) {
    static const char* kColumns[] = {"id", "x", "y", "width", "height", "tag"};
    std::vector<MetadataRecord> records;
    std::vector<int> column_of(6, -1);
    bool have_header = false;
    std::size_t row = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        if (!have_header) {
            auto names = split_csv_line(line, 0);
            for (std::size_t c = 0; c < names.size(); ++c) {
                std::string lower = names[c];
                std::transform(lower.begin(), lower.end(), lower.begin(),
                               [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
                for (int k = 0; k < 6; ++k)
                    if (lower == kColumns[k]) column_of[static_cast<std::size_t>(k)] = static_cast<int>(c);
            }
            for (int k = 0; k < 6; ++k)
                if (column_of[static_cast<std::size_t>(k)] < 0)
                    throw Error(ErrorCode::parse, std::string("header is missing column '") + kColumns[k] + "'");
            have_header = true;
            continue;
        }

        ++row;
        auto fields = split_csv_line(line, row);
        auto field = [&](int k) -> const std::string& {
            auto c = static_cast<std::size_t>(column_of[static_cast<std::size_t>(k)]);
            if (c >= fields.size())
                throw Error(ErrorCode::parse, "row " + std::to_string(row) + ": missing column '" + kColumns[k] + "'");
            return fields[c];
        };
        MetadataRecord r;
        r.id = field(0);
        if (r.id.empty()) throw Error(ErrorCode::parse, "row " + std::to_string(row) + ": empty id");
        r.x = parse_field(field(1), row, "x");
        r.y = parse_field(field(2), row, "y");
        r.width = parse_field(field(3), row, "width");
        r.height = parse_field(field(4), row, "height");
        r.tag = field(5);
        if (r.width < 0.0 || r.height < 0.0)
            throw Error(ErrorCode::parse, "row " + std::to_string(row) + ": negative width or height");
        records.push_back(std::move(r));
    }
    return records;
}

Floorplan load_metadata(const std::vector<MetadataRecord>& records, const std::set<std::string>& keep_tags) {
    Floorplan fp;
    fp.source = FloorplanSource::metadata;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (!seen.insert(r.id).second)
            throw Error(ErrorCode::duplicate_id, "row " + std::to_string(i + 1) + ": duplicate id '" + r.id + "'");
        if (r.width < 0.0 || r.height < 0.0 || !std::isfinite(r.x) || !std::isfinite(r.y) || !std::isfinite(r.width) ||
            !std::isfinite(r.height))
            throw Error(ErrorCode::parse, "row " + std::to_string(i + 1) + ": invalid geometry");
        if (!keep_tags.contains(r.tag)) continue;
        fp.workspaces.push_back(Workspace::make(r.id, {{r.x, r.y}, {r.x + r.width, r.y + r.height}}, r.tag));
    }
    if (fp.workspaces.empty()) throw Error(ErrorCode::empty_floorplan, "no metadata rows matched the kept tags");
    return fp;
}

// ---------------------------------------------------------------------------
// Synthetic grids

Floorplan generate_synthetic(const GridSpec& spec, std::uint64_t seed) {
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (spec.rows < 1 || spec.cols < 1 || !(spec.desk_w > 0.0) || !(spec.desk_h > 0.0) ||
        !finite_nonneg(spec.pitch_x) || !finite_nonneg(spec.pitch_y) || spec.pitch_x < spec.desk_w ||
        spec.pitch_y < spec.desk_h || spec.aisle_every < 0 || !finite_nonneg(spec.aisle_width) ||
        !finite_nonneg(spec.jitter) || spec.limit < 0)
        throw Error(ErrorCode::invalid_spec, "degenerate grid spec");

    Floorplan fp;
    fp.source = FloorplanSource::synthetic;
    Rng rng(seed);
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            if (spec.limit > 0 && static_cast<int>(fp.workspaces.size()) >= spec.limit) return fp;
            double x = c * spec.pitch_x + (spec.aisle_every > 0 ? (c / spec.aisle_every) * spec.aisle_width : 0.0);
            double y = r * spec.pitch_y;
            if (spec.jitter > 0.0) {
                x += rng.uniform(-spec.jitter, spec.jitter);
                y += rng.uniform(-spec.jitter, spec.jitter);
            }
            fp.workspaces.push_back(Workspace::make("r" + std::to_string(r) + "c" + std::to_string(c),
                                                    {{x, y}, {x + spec.desk_w, y + spec.desk_h}}, "WORKSPACE"));
        }
    }
    return fp;
}

}  // namespace seatplan
