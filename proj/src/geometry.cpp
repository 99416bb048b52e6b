#include "sdd/geometry.hpp"

#include <string>

namespace sdd {

const char* edge_name(Edge e) {
    switch (e) {
        case Edge::bottom: return "bottom";
        case Edge::top: return "top";
        case Edge::left: return "left";
        case Edge::right: return "right";
    }
    return "?";
}

RectDomain::RectDomain(double x0, double x1, double y0, double y1)
    : xmin(x0), xmax(x1), ymin(y0), ymax(y1) {
    if (!(xmin < xmax) || !(ymin < ymax)) {
        throw ValidationError("RectDomain: requires xmin < xmax and ymin < ymax");
    }
}

double RectDomain::distance_to_edge(Point p, Edge e) const {
    switch (e) {
        case Edge::bottom: return p.y - ymin;
        case Edge::top: return ymax - p.y;
        case Edge::left: return p.x - xmin;
        case Edge::right: return xmax - p.x;
    }
    return 0.0;
}

GridSpec::GridSpec(RectDomain d, int nx_, int ny_) : domain(d), nx(nx_), ny(ny_) {
    if (nx < 3 || ny < 3) {
        throw ValidationError("GridSpec: needs nx >= 3 and ny >= 3, got " +
                              std::to_string(nx) + "x" + std::to_string(ny));
    }
}

}  // namespace sdd
