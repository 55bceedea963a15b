#pragma once

// Figure layout: the polygon is the unit circle with gate s spanning angles
// [2πs/n, 2π(s+1)/n] and its two crossing points at one and two thirds of the
// way along. Interior sections are hyperbolic geodesics of the disk, exterior
// sections climb radially to a circle whose radius grows with nesting depth,
// and tails are short radial stubs.

#include <optional>
#include <string>
#include <vector>

#include "stadium/model.hpp"

namespace stadium {

struct Point {
    double x = 0;
    double y = 0;
};

enum class ArcRole { Interior, Exterior, Stub, Boundary };

struct DrawnArc {
    std::string name;
    ArcRole role = ArcRole::Interior;
    std::optional<Curve> curve;       // unset for polygon pieces
    std::optional<Curve> split_curve; // merged chords: the walk after split_index
    std::size_t split_index = 0;      // merged chords: where x (or a) sits
    bool highlighted = false;
    std::vector<Point> points;
};

struct DrawnLabel {
    std::string text;
    Point at;
    std::optional<Curve> curve;
};

struct Drawing {
    int gates = 0;
    double extent = 1; // every point lies within this radius
    std::vector<Point> marks;      // boundary crossing points, by position
    std::vector<Point> corners;    // polygon vertices
    std::vector<DrawnArc> arcs;
    std::vector<DrawnLabel> labels;
    std::optional<Point> start;    // x, the common start point
    std::optional<Point> end;      // a, the shared end point
};

// Throws NotRealizable unless the config is realizable or `diagnostic` is
// set; in diagnostic mode the offending chord pair is highlighted.
Drawing layout_drawing(const StadiumConfig &config, bool diagnostic = false);

std::string to_svg(const Drawing &drawing);

std::string render_svg(const StadiumConfig &config, bool diagnostic = false);

struct DrawingCrossing {
    std::string first;
    std::string second;
    Point at;
};

// Pairwise polyline intersection test over every arc, the polygon pieces
// included. Intersections within kAuditTolerance of an endpoint the two arcs
// share are ignored.
constexpr double kAuditTolerance = 1e-6;

std::vector<DrawingCrossing> drawing_crossings(const Drawing &drawing);

bool audit_drawing(const Drawing &drawing);

} // namespace stadium
