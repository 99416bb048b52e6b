#pragma once

#include <array>
#include <cstddef>

#include "sdd/errors.hpp"

namespace sdd {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

enum class Edge : int { bottom = 0, top = 1, left = 2, right = 3 };

inline constexpr std::array<Edge, 4> all_edges{Edge::bottom, Edge::top, Edge::left,
                                               Edge::right};

const char* edge_name(Edge e);

// Axis-aligned rectangle in physical coordinates.
struct RectDomain {
    double xmin, xmax, ymin, ymax;

    RectDomain(double x0, double x1, double y0, double y1);

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }

    bool contains(Point p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    bool strictly_inside(Point p) const {
        return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
    }

    // Distance from p to the given edge line, measured so that points inside
    // the rectangle have non-negative distance to every edge.
    double distance_to_edge(Point p, Edge e) const;
};

// Uniform structured grid of nx x ny nodes over a rectangle.
// Storage convention everywhere: index (i, j) -> j * nx + i.
struct GridSpec {
    RectDomain domain;
    int nx, ny;

    GridSpec(RectDomain d, int nx_, int ny_);

    double hx() const { return domain.width() / (nx - 1); }
    double hy() const { return domain.height() / (ny - 1); }

    std::size_t size() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(i);
    }
    Point node(int i, int j) const {
        return {domain.xmin + i * hx(), domain.ymin + j * hy()};
    }

    bool same_shape(const GridSpec& o) const { return nx == o.nx && ny == o.ny; }
};

}  // namespace sdd
