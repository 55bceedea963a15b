#include "stadium/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace stadium {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLevel = 0.15;   // radial gap between nested exterior arcs
constexpr int kGeodesicSamples = 129;
constexpr int kRadialSamples = 9;
constexpr double kScale = 200.0;

Point polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double position_angle(int gates, Position p) {
    const int gate = p / 2;
    const int slot = p % 2;
    return 2 * kPi * (gate + (1.0 + slot) / 3.0) / gates;
}

double wrap(double a) {
    while (a <= -kPi)
        a += 2 * kPi;
    while (a > kPi)
        a -= 2 * kPi;
    return a;
}

// Hyperbolic line of the unit disk from angle a to angle b.
std::vector<Point> geodesic(double a, double b) {
    std::vector<Point> out;
    const Point p = polar(1, a), q = polar(1, b);
    const double d = wrap(b - a);
    if (kPi - std::abs(d) < 1e-9) {
        for (int i = 0; i < kGeodesicSamples; ++i) {
            const double t = static_cast<double>(i) / (kGeodesicSamples - 1);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
        return out;
    }
    const double m = a + d / 2;
    const Point c = polar(1 / std::cos(d / 2), m);
    const double r = std::abs(std::tan(d / 2));
    const double from = std::atan2(p.y - c.y, p.x - c.x);
    const double sweep = wrap(std::atan2(q.y - c.y, q.x - c.x) - from);
    for (int i = 0; i < kGeodesicSamples; ++i) {
        const double t = static_cast<double>(i) / (kGeodesicSamples - 1);
        out.push_back({c.x + r * std::cos(from + t * sweep), c.y + r * std::sin(from + t * sweep)});
    }
    out.front() = p;
    out.back() = q;
    return out;
}

// Up from angle lo to radius, counterclockwise around to angle hi, back down.
// Returns the index of the arc's angular midpoint alongside the points.
std::vector<Point> outside_arc(double lo, double hi, double radius, std::size_t &middle) {
    std::vector<Point> out;
    for (int i = 0; i < kRadialSamples; ++i)
        out.push_back(polar(1 + (radius - 1) * i / (kRadialSamples - 1), lo));
    int steps = std::max(8, static_cast<int>(std::ceil((hi - lo) * 40)));
    steps += steps % 2; // even, so there is a middle sample
    for (int i = 1; i <= steps; ++i) {
        out.push_back(polar(radius, lo + (hi - lo) * i / steps));
        if (i == steps / 2)
            middle = out.size() - 1;
    }
    for (int i = kRadialSamples - 2; i >= 0; --i)
        out.push_back(polar(1 + (radius - 1) * i / (kRadialSamples - 1), hi));
    return out;
}

std::string chord_name(const BoundaryWord &word, const Chord &c) {
    const auto a = to_string(word.points[c.a]);
    const auto b = to_string(word.points[c.b]);
    switch (c.kind) {
    case ChordKind::MergedThroughStart: return a + "-x-" + b;
    case ChordKind::MergedThroughEnd: return a + "-a-" + b;
    default: return a + "-" + b;
    }
}

bool same_chord(const Chord &c, const Chord &d) {
    return (c.a == d.a && c.b == d.b) || (c.a == d.b && c.b == d.a);
}

struct Box {
    double x0, y0, x1, y1;
    bool overlaps(const Box &o, double eps) const {
        return x0 <= o.x1 + eps && o.x0 <= x1 + eps && y0 <= o.y1 + eps && o.y0 <= y1 + eps;
    }
};

Box box_of(const Point *p, std::size_t count) {
    Box b{p[0].x, p[0].y, p[0].x, p[0].y};
    for (std::size_t i = 1; i < count; ++i) {
        b.x0 = std::min(b.x0, p[i].x);
        b.y0 = std::min(b.y0, p[i].y);
        b.x1 = std::max(b.x1, p[i].x);
        b.y1 = std::max(b.y1, p[i].y);
    }
    return b;
}

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Intersection points of two segments: none, one, or the two ends of a
// collinear overlap.
std::vector<Point> segment_meet(Point p1, Point p2, Point q1, Point q2) {
    constexpr double eps = 1e-12;
    const double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
    const double denom = (p2.x - p1.x) * (q2.y - q1.y) - (p2.y - p1.y) * (q2.x - q1.x);
    if (std::abs(denom) > eps) {
        if ((d1 > eps && d2 > eps) || (d1 < -eps && d2 < -eps) || (d3 > eps && d4 > eps) ||
            (d3 < -eps && d4 < -eps))
            return {};
        const double t = ((q1.x - p1.x) * (q2.y - q1.y) - (q1.y - p1.y) * (q2.x - q1.x)) / denom;
        return {{p1.x + t * (p2.x - p1.x), p1.y + t * (p2.y - p1.y)}};
    }
    if (std::abs(d1) > eps || std::abs(d2) > eps)
        return {}; // parallel, not collinear
    // collinear: project onto the longer axis
    const bool use_x = std::abs(p2.x - p1.x) >= std::abs(p2.y - p1.y);
    auto key = [use_x](Point p) { return use_x ? p.x : p.y; };
    Point a = p1, b = p2, c = q1, d = q2;
    if (key(a) > key(b))
        std::swap(a, b);
    if (key(c) > key(d))
        std::swap(c, d);
    const Point lo = key(a) > key(c) ? a : c;
    const Point hi = key(b) < key(d) ? b : d;
    if (key(lo) > key(hi) + eps)
        return {};
    return {lo, hi};
}

std::string coord(double v) { return fmt::format("{:.4f}", v * kScale); }

std::string colour(std::optional<Curve> c) {
    if (!c)
        return "#888888";
    return *c == Curve::Bob ? "#c0392b" : "#000000";
}

std::string polyline(const std::vector<Point> &pts, std::size_t from, std::size_t to, const std::string &stroke,
                     double width) {
    std::string out = "  <polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
                      fmt::format("{:.1f}", width) + "\" points=\"";
    for (std::size_t i = from; i <= to; ++i) {
        if (i > from)
            out += ' ';
        out += coord(pts[i].x) + "," + coord(-pts[i].y);
    }
    out += "\"/>\n";
    return out;
}

} // namespace

Drawing layout_drawing(const StadiumConfig &config, bool diagnostic) {
    const RealizabilityVerdict verdict = is_realizable(config);
    if (!verdict.realizable && !diagnostic)
        throw StadiumError(ErrorKind::NotRealizable, "configuration is not realizable; use diagnostic mode");

    const int n = config.gates;
    const BoundaryWord word = boundary_word(config);
    Drawing d;
    d.gates = n;
    for (Position p = 0; p < word.size(); ++p)
        d.marks.push_back(polar(1, position_angle(n, p)));
    for (int s = 0; s < n; ++s)
        d.corners.push_back(polar(1, 2 * kPi * s / n));

    auto highlighted = [&](Region r, const Chord &c) {
        return verdict.witness && verdict.witness_region == r &&
               (same_chord(c, verdict.witness->first) || same_chord(c, verdict.witness->second));
    };

    // interior
    const double spacing = 2 * kPi / (3 * n);
    const double shallowest = 1 - (1 / std::cos(spacing) - std::tan(spacing));
    const double inner_stub = 0.4 * shallowest;
    for (const Chord &c : verdict.interior.chords) {
        DrawnArc arc;
        arc.name = chord_name(word, c);
        arc.role = ArcRole::Interior;
        arc.curve = word.points[c.a].curve;
        arc.highlighted = highlighted(Region::Interior, c);
        arc.points = geodesic(position_angle(n, c.a), position_angle(n, c.b));
        if (c.kind != ChordKind::Plain) {
            arc.split_curve = word.points[c.b].curve;
            arc.split_index = arc.points.size() / 2;
            (c.kind == ChordKind::MergedThroughStart ? d.start : d.end) = arc.points[arc.split_index];
        }
        d.arcs.push_back(std::move(arc));
    }
    for (Position p : verdict.interior.free_stubs) {
        const double a = position_angle(n, p);
        DrawnArc arc;
        arc.name = "tail " + to_string(word.points[p]);
        arc.role = ArcRole::Stub;
        arc.curve = word.points[p].curve;
        arc.points = {polar(1, a), polar(1 - inner_stub / 2, a), polar(1 - inner_stub, a)};
        d.arcs.push_back(std::move(arc));
    }

    // exterior, cut open at angle 0 so chords become nested intervals
    const auto &outer = verdict.exterior.chords;
    std::vector<int> height(outer.size(), 1);
    std::vector<std::size_t> order(outer.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    auto span = [&](std::size_t i) { return std::abs(outer[i].a - outer[i].b); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return span(i) < span(j); });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const std::size_t i = order[oi];
        const int lo = std::min(outer[i].a, outer[i].b), hi = std::max(outer[i].a, outer[i].b);
        for (std::size_t oj = 0; oj < oi; ++oj) {
            const std::size_t j = order[oj];
            const int lo2 = std::min(outer[j].a, outer[j].b), hi2 = std::max(outer[j].a, outer[j].b);
            if (lo < lo2 && hi2 < hi)
                height[i] = std::max(height[i], height[j] + 1);
        }
    }
    int top = 0;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const Chord &c = outer[i];
        const int lo = std::min(c.a, c.b), hi = std::max(c.a, c.b);
        top = std::max(top, height[i]);
        DrawnArc arc;
        arc.name = chord_name(word, c);
        arc.role = ArcRole::Exterior;
        arc.curve = word.points[c.a].curve;
        arc.highlighted = highlighted(Region::Exterior, c);
        std::size_t middle = 0;
        arc.points = outside_arc(position_angle(n, lo), position_angle(n, hi), 1 + kLevel * height[i], middle);
        if (c.a != lo) {
            std::reverse(arc.points.begin(), arc.points.end());
            middle = arc.points.size() - 1 - middle;
        }
        if (c.kind != ChordKind::Plain) {
            arc.split_curve = word.points[c.b].curve;
            arc.split_index = middle;
            (c.kind == ChordKind::MergedThroughStart ? d.start : d.end) = arc.points[middle];
        }
        d.arcs.push_back(std::move(arc));
    }
    for (Position p : verdict.exterior.free_stubs) {
        const double a = position_angle(n, p);
        DrawnArc arc;
        arc.name = "tail " + to_string(word.points[p]);
        arc.role = ArcRole::Stub;
        arc.curve = word.points[p].curve;
        arc.points = {polar(1, a), polar(1 + kLevel / 4, a), polar(1 + kLevel / 2, a)};
        d.arcs.push_back(std::move(arc));
    }

    // polygon, split at every corner and crossing point
    std::vector<double> stops;
    for (int s = 0; s < n; ++s) {
        stops.push_back(2 * kPi * s / n);
        stops.push_back(position_angle(n, 2 * s));
        stops.push_back(position_angle(n, 2 * s + 1));
    }
    for (std::size_t i = 0; i < stops.size(); ++i) {
        const double from = stops[i];
        const double to = i + 1 < stops.size() ? stops[i + 1] : 2 * kPi;
        DrawnArc arc;
        arc.name = "polygon " + std::to_string(i);
        arc.role = ArcRole::Boundary;
        for (int k = 0; k <= 12; ++k)
            arc.points.push_back(polar(1, from + (to - from) * k / 12));
        d.arcs.push_back(std::move(arc));
    }

    for (Position p = 0; p < word.size(); ++p)
        d.labels.push_back({to_string(word.points[p]), polar(0.88, position_angle(n, p)), word.points[p].curve});
    for (int s = 0; s < n; ++s)
        d.labels.push_back({std::to_string(s), polar(1.07, 2 * kPi * (s + 0.5) / n), std::nullopt});
    if (d.start)
        d.labels.push_back({"x", {d.start->x + 0.03, d.start->y + 0.03}, std::nullopt});
    if (d.end)
        d.labels.push_back({"a", {d.end->x + 0.03, d.end->y + 0.03}, std::nullopt});
    d.extent = 1 + kLevel * std::max(top, 1) + 0.15;
    return d;
}

std::string to_svg(const Drawing &d) {
    const double half = d.extent * kScale;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt::format("{:.1f}", -half) + " " +
                      fmt::format("{:.1f}", -half) + " " + fmt::format("{:.1f}", 2 * half) + " " +
                      fmt::format("{:.1f}", 2 * half) + "\" width=\"" + fmt::format("{:.0f}", 2 * half) +
                      "\" height=\"" + fmt::format("{:.0f}", 2 * half) + "\">\n";
    out += "  <rect x=\"" + fmt::format("{:.1f}", -half) + "\" y=\"" + fmt::format("{:.1f}", -half) + "\" width=\"" +
           fmt::format("{:.1f}", 2 * half) + "\" height=\"" + fmt::format("{:.1f}", 2 * half) +
           "\" fill=\"white\"/>\n";
    for (const auto &arc : d.arcs) {
        if (arc.role == ArcRole::Boundary)
            out += polyline(arc.points, 0, arc.points.size() - 1, "#888888", 1.5);
    }
    for (const auto &arc : d.arcs) {
        if (arc.role == ArcRole::Boundary)
            continue;
        const double width = arc.highlighted ? 4.0 : 2.0;
        if (arc.highlighted)
            out += polyline(arc.points, 0, arc.points.size() - 1, "#ff8c00", 8.0);
        if (arc.split_curve) {
            out += polyline(arc.points, 0, arc.split_index, colour(arc.curve), width);
            out += polyline(arc.points, arc.split_index, arc.points.size() - 1, colour(arc.split_curve), width);
        } else {
            out += polyline(arc.points, 0, arc.points.size() - 1, colour(arc.curve), width);
        }
    }
    for (const auto &c : d.corners)
        out += "  <rect x=\"" + fmt::format("{:.4f}", c.x * kScale - 3) + "\" y=\"" +
               fmt::format("{:.4f}", -c.y * kScale - 3) + "\" width=\"6\" height=\"6\" fill=\"#888888\"/>\n";
    for (std::size_t i = 0; i < d.marks.size(); ++i)
        out += "  <circle cx=\"" + coord(d.marks[i].x) + "\" cy=\"" + coord(-d.marks[i].y) + "\" r=\"4\" fill=\"" +
               colour(d.labels[i].curve) + "\"/>\n";
    for (const Point *p : {d.start ? &*d.start : nullptr, d.end ? &*d.end : nullptr})
        if (p)
            out += "  <circle cx=\"" + coord(p->x) + "\" cy=\"" + coord(-p->y) + "\" r=\"5\" fill=\"#2e86c1\"/>\n";
    for (const auto &l : d.labels)
        out += "  <text x=\"" + coord(l.at.x) + "\" y=\"" + coord(-l.at.y) +
               "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" dominant-baseline=\"middle\" "
               "fill=\"" +
               (l.curve ? colour(l.curve) : std::string("#1f4e79")) + "\">" + l.text + "</text>\n";
    out += "</svg>\n";
    return out;
}

std::string render_svg(const StadiumConfig &config, bool diagnostic) {
    return to_svg(layout_drawing(config, diagnostic));
}

std::vector<DrawingCrossing> drawing_crossings(const Drawing &d) {
    std::vector<DrawingCrossing> out;
    std::vector<Box> boxes;
    for (const auto &arc : d.arcs)
        boxes.push_back(box_of(arc.points.data(), arc.points.size()));
    for (std::size_t i = 0; i < d.arcs.size(); ++i)
        for (std::size_t j = i + 1; j < d.arcs.size(); ++j) {
            if (!boxes[i].overlaps(boxes[j], kAuditTolerance))
                continue;
            const auto &a = d.arcs[i].points;
            const auto &b = d.arcs[j].points;
            std::vector<Point> shared;
            for (Point p : {a.front(), a.back()})
                for (Point q : {b.front(), b.back()})
                    if (distance(p, q) < 1e-9)
                        shared.push_back(p);
            auto ignorable = [&](Point x) {
                return std::any_of(shared.begin(), shared.end(),
                                   [&](Point s) { return distance(s, x) < kAuditTolerance; });
            };
            bool found = false;
            for (std::size_t s = 0; s + 1 < a.size() && !found; ++s) {
                const Box sa = box_of(&a[s], 2);
                if (!sa.overlaps(boxes[j], kAuditTolerance))
                    continue;
                for (std::size_t t = 0; t + 1 < b.size() && !found; ++t) {
                    if (!sa.overlaps(box_of(&b[t], 2), kAuditTolerance))
                        continue;
                    for (Point x : segment_meet(a[s], a[s + 1], b[t], b[t + 1]))
                        if (!ignorable(x)) {
                            out.push_back({d.arcs[i].name, d.arcs[j].name, x});
                            found = true;
                            break;
                        }
                }
            }
        }
    return out;
}

bool audit_drawing(const Drawing &drawing) { return drawing_crossings(drawing).empty(); }

} // namespace stadium
