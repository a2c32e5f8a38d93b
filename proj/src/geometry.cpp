#include "seatplan/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "seatplan/error.hpp"

namespace seatplan {

BoundingBox BoundingBox::from_corners(Point a, Point b) {
    return {{std::min(a.x, b.x), std::min(a.y, b.y)}, {std::max(a.x, b.x), std::max(a.y, b.y)}};
}

bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void validate(const BoundingBox& b) {
    if (!is_finite(b.min) || !is_finite(b.max))
        throw Error(ErrorCode::invalid_argument, "bounding box has non-finite coordinates");
    if (b.min.x > b.max.x || b.min.y > b.max.y)
        throw Error(ErrorCode::invalid_argument, "bounding box min exceeds max");
}

void validate(const ScaleTransform& t) {
    if (!(std::isfinite(t.sx) && std::isfinite(t.sy) && t.sx > 0.0 && t.sy > 0.0))
        throw Error(ErrorCode::invalid_transform, "scale factors must be finite and positive");
}

Point centroid(const BoundingBox& b) {
    return {(b.min.x + b.max.x) / 2.0, (b.min.y + b.max.y) / 2.0};
}

Point rescale(Point p, const ScaleTransform& t) {
    validate(t);
    return {p.x * t.sx, p.y * t.sy};
}

BoundingBox rescale(const BoundingBox& b, const ScaleTransform& t) {
    return {rescale(b.min, t), rescale(b.max, t)};
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double intersection_area(const BoundingBox& a, const BoundingBox& b) {
    double w = std::min(a.max.x, b.max.x) - std::max(a.min.x, b.min.x);
    double h = std::min(a.max.y, b.max.y) - std::max(a.min.y, b.min.y);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

double intersection_over_union(const BoundingBox& a, const BoundingBox& b) {
    double inter = intersection_area(a, b);
    double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace seatplan
