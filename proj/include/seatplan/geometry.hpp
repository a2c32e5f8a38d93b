#pragma once

namespace seatplan {

// Lengths are inches unless stated otherwise.
inline constexpr double kCentimetersPerInch = 2.54;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned box. Construct through `from_corners` to get the min/max
/// normalization; the aggregate form trusts the caller.
struct BoundingBox {
    Point min;
    Point max;

    static BoundingBox from_corners(Point a, Point b);

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double area() const { return width() * height(); }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct ScaleTransform {
    double sx = 1.0;
    double sy = 1.0;
};

bool is_finite(Point p);

/// Throws ErrorCode::invalid_argument on non-finite or inverted boxes.
void validate(const BoundingBox& b);

/// Throws ErrorCode::invalid_transform unless both factors are finite and > 0.
void validate(const ScaleTransform& t);

Point centroid(const BoundingBox& b);
Point rescale(Point p, const ScaleTransform& t);
BoundingBox rescale(const BoundingBox& b, const ScaleTransform& t);

/// Euclidean distance.
double distance(Point a, Point b);

double intersection_area(const BoundingBox& a, const BoundingBox& b);
double intersection_over_union(const BoundingBox& a, const BoundingBox& b);

}  // namespace seatplan
