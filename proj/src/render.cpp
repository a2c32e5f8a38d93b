#include "seatplan/render.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "seatplan/error.hpp"

namespace seatplan {

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0;  // normalizes -0
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_allocation(const Floorplan& fp, const AllocationPlan& plan) {
    if (fp.workspaces.empty()) throw Error(ErrorCode::empty_floorplan, "nothing to render");
    for (const auto& [ws, unit] : plan.assignments) {
        bool known = std::any_of(fp.workspaces.begin(), fp.workspaces.end(), [&](const Workspace& w) { return w.id == ws; });
        if (!known) throw Error(ErrorCode::reference, "plan names unknown workspace '" + ws + "'");
    }

    BoundingBox extent = fp.workspaces.front().bbox;
    for (const auto& ws : fp.workspaces) {
        extent.min.x = std::min(extent.min.x, ws.bbox.min.x);
        extent.min.y = std::min(extent.min.y, ws.bbox.min.y);
        extent.max.x = std::max(extent.max.x, ws.bbox.max.x);
        extent.max.y = std::max(extent.max.y, ws.bbox.max.y);
    }
    const double margin = 12.0;
    double x0 = extent.min.x - margin, y0 = extent.min.y - margin;
    double w = extent.width() + 2 * margin, h = extent.height() + 2 * margin;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" width=\"" << num(w)
        << "\" height=\"" << num(h) << "\" viewBox=\"" << num(x0) << ' ' << num(y0) << ' ' << num(w) << ' ' << num(h)
        << "\">\n";
    if (fp.background)
        out << "  <image href=\"" << escape(*fp.background) << "\" x=\"" << num(x0) << "\" y=\"" << num(y0)
            << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\"/>\n";
    out << "  <g id=\"workspaces\">\n";
    for (const auto& ws : fp.workspaces) {
        auto it = plan.assignments.find(ws.id);
        bool allocated = it != plan.assignments.end();
        out << "    <rect id=\"" << escape(ws.id) << "\" x=\"" << num(ws.bbox.min.x) << "\" y=\"" << num(ws.bbox.min.y)
            << "\" width=\"" << num(ws.bbox.width()) << "\" height=\"" << num(ws.bbox.height()) << "\" fill=\""
            << (allocated ? kAllocatedFill : kUnallocatedFill) << "\" stroke=\"#333333\" stroke-width=\"1\"";
        if (allocated) out << " data-unit=\"" << escape(it->second) << "\"";
        out << "/>\n";
    }
    out << "  </g>\n</svg>\n";
    return out.str();
}

std::string render_floorplan(const Floorplan& fp) { return render_allocation(fp, AllocationPlan{}); }

}  // namespace seatplan
