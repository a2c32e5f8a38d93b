#include "seatplan/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "seatplan/error.hpp"

namespace seatplan {

using Json = nlohmann::ordered_json;

namespace {

double number(const Json& v, const std::string& what) {
    if (!v.is_number()) throw Error(ErrorCode::parse, what + " must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw Error(ErrorCode::parse, what + " must be finite");
    return d;
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorCode::parse, where + " is missing '" + key + "'");
    return obj.at(key);
}

std::string text(const Json& v, const std::string& what) {
    if (!v.is_string()) throw Error(ErrorCode::parse, what + " must be a string");
    return v.get<std::string>();
}

}  // namespace

Json parse_json(const std::string& content, const std::string& what) {
    try {
        return Json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse, "invalid JSON in " + what + ": " + e.what());
    }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::parse, "cannot write '" + path + "'");
    out << content;
}

Json floorplan_to_json(const Floorplan& fp) {
    Json doc;
    doc["units"] = to_string(fp.units);
    doc["source"] = to_string(fp.source);
    if (fp.background) doc["background"] = *fp.background;
    Json list = Json::array();
    for (const auto& ws : fp.workspaces) {
        Json item;
        item["id"] = ws.id;
        item["bbox"] = {ws.bbox.min.x, ws.bbox.min.y, ws.bbox.max.x, ws.bbox.max.y};
        item["centroid"] = {ws.centroid.x, ws.centroid.y};
        item["tag"] = ws.tag ? Json(*ws.tag) : Json(nullptr);
        list.push_back(std::move(item));
    }
    doc["workspaces"] = std::move(list);
    return doc;
}

Floorplan floorplan_from_json(const Json& doc) {
    Floorplan fp;
    std::string units = text(field(doc, "units", "workspace document"), "units");
    double factor = 1.0;
    if (units == "centimeters")
        factor = 1.0 / kCentimetersPerInch;
    else if (units != "inches")
        throw Error(ErrorCode::parse, "unknown units '" + units + "'");
    fp.units = LengthUnit::inches;
    if (doc.contains("source")) {
        std::string src = text(doc.at("source"), "source");
        if (src == "vector") fp.source = FloorplanSource::vector;
        else if (src == "raster") fp.source = FloorplanSource::raster;
        else if (src == "metadata") fp.source = FloorplanSource::metadata;
        else if (src == "synthetic") fp.source = FloorplanSource::synthetic;
        else throw Error(ErrorCode::parse, "unknown source '" + src + "'");
    }
    if (doc.contains("background") && !doc.at("background").is_null()) fp.background = text(doc.at("background"), "background");

    const Json& list = field(doc, "workspaces", "workspace document");
    if (!list.is_array()) throw Error(ErrorCode::parse, "workspaces must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Json& item = list[i];
        std::string where = "workspace " + std::to_string(i);
        std::string id = text(field(item, "id", where), where + " id");
        const Json& b = field(item, "bbox", where);
        if (!b.is_array() || b.size() != 4) throw Error(ErrorCode::parse, where + " bbox must have 4 numbers");
        BoundingBox box{{number(b[0], "bbox") * factor, number(b[1], "bbox") * factor},
                        {number(b[2], "bbox") * factor, number(b[3], "bbox") * factor}};
        if (box.min.x > box.max.x || box.min.y > box.max.y) throw Error(ErrorCode::parse, where + " bbox is inverted");
        std::optional<std::string> tag;
        if (item.contains("tag") && !item.at("tag").is_null()) tag = text(item.at("tag"), where + " tag");
        Workspace ws = Workspace::make(id, box, tag);
        if (item.contains("centroid")) {
            const Json& c = item.at("centroid");
            if (!c.is_array() || c.size() != 2) throw Error(ErrorCode::parse, where + " centroid must have 2 numbers");
            Point given{number(c[0], "centroid") * factor, number(c[1], "centroid") * factor};
            if (std::abs(given.x - ws.centroid.x) > 1e-6 || std::abs(given.y - ws.centroid.y) > 1e-6)
                throw Error(ErrorCode::parse, where + " centroid does not match its bbox");
        }
        fp.workspaces.push_back(std::move(ws));
    }
    try {
        validate(fp);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::invalid_argument) throw Error(ErrorCode::parse, e.what());
        throw;
    }
    return fp;
}

Json plan_to_json(const AllocationPlan& plan) {
    Json doc;
    doc["method"] = plan.method;
    doc["d"] = plan.d;
    doc["objective"] = plan.objective;
    doc["allocated"] = plan.allocated_count();
    Json assignments = Json::object();
    for (const auto& [ws, unit] : plan.assignments) assignments[ws] = unit;
    doc["assignments"] = std::move(assignments);
    doc["unallocated"] = plan.unallocated;
    return doc;
}

namespace {

std::map<std::string, std::string, NaturalLess> assignment_map(const Json& obj, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorCode::parse, where + " must be an object");
    std::map<std::string, std::string, NaturalLess> out;
    for (const auto& [ws, unit] : obj.items()) out[ws] = text(unit, where + " entry");
    return out;
}

}  // namespace

AllocationPlan plan_from_json(const Json& doc) {
    AllocationPlan plan;
    if (doc.contains("method")) plan.method = text(doc.at("method"), "method");
    if (doc.contains("d")) plan.d = number(doc.at("d"), "d");
    if (doc.contains("objective")) plan.objective = number(doc.at("objective"), "objective");
    plan.assignments = assignment_map(field(doc, "assignments", "plan document"), "assignments");
    if (doc.contains("unallocated")) {
        for (const auto& ws : doc.at("unallocated")) plan.unallocated.push_back(text(ws, "unallocated entry"));
    }
    return plan;
}

UnitsDocument units_from_json(const Json& doc) {
    UnitsDocument out;
    const Json& list = field(doc, "units", "units document");
    if (!list.is_array()) throw Error(ErrorCode::parse, "units must be an array");
    for (const auto& item : list) {
        BusinessUnit u;
        u.id = text(field(item, "id", "unit"), "unit id");
        const Json& h = field(item, "headcount", "unit");
        if (!h.is_number_integer()) throw Error(ErrorCode::parse, "headcount of '" + u.id + "' must be an integer");
        u.headcount = h.get<long long>();
        out.units.push_back(std::move(u));
    }
    try {
        validate(out.units);
    } catch (const Error& e) {
        throw Error(ErrorCode::parse, e.what());
    }
    if (doc.contains("prior") && !doc.at("prior").is_null()) {
        AllocationPlan prior;
        prior.method = "prior";
        prior.assignments = assignment_map(doc.at("prior"), "prior");
        out.prior = std::move(prior);
    }
    return out;
}

AllocationPlan prior_from_text(const std::string& content) {
    // Track keys per open object so a workspace listed twice is caught before
    // the parser silently keeps the last value.
    std::vector<std::set<std::string>> open;
    bool duplicate = false;
    std::string dup_key;
    auto callback = [&](int, Json::parse_event_t event, Json& parsed) {
        switch (event) {
            case Json::parse_event_t::object_start: open.emplace_back(); break;
            case Json::parse_event_t::object_end: open.pop_back(); break;
            case Json::parse_event_t::key:
                if (!open.back().insert(parsed.get<std::string>()).second) {
                    duplicate = true;
                    dup_key = parsed.get<std::string>();
                }
                break;
            default: break;
        }
        return true;
    };
    Json doc;
    try {
        doc = Json::parse(content, callback);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse, std::string("invalid JSON in prior plan: ") + e.what());
    }
    if (duplicate) throw Error(ErrorCode::invalid_prior, "prior plan lists '" + dup_key + "' more than once");
    AllocationPlan prior;
    prior.method = "prior";
    if (doc.contains("prior"))
        prior.assignments = assignment_map(doc.at("prior"), "prior");
    else
        prior.assignments = assignment_map(field(doc, "assignments", "prior plan"), "assignments");
    return prior;
}

Json graph_to_json(const ConstraintGraph& g) {
    Json doc;
    doc["d"] = g.social_distance();
    doc["nodes"] = g.ids();
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back({g.id(e.u), g.id(e.v), e.weight});
    doc["edges"] = std::move(edges);
    return doc;
}

}  // namespace seatplan
