#include "sdd/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace sdd {

namespace {

double table_at(const std::vector<double>& table, double s) {
    const int n = static_cast<int>(table.size());
    const int k = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
    const double t = std::clamp(s - k, 0.0, 1.0);
    return (1.0 - t) * table[k] + t * table[k + 1];
}

double edge_param(const GridSpec& spec, Edge e, Point p) {
    if (e == Edge::bottom || e == Edge::top) return (p.x - spec.domain.xmin) / spec.hx();
    return (p.y - spec.domain.ymin) / spec.hy();
}

}  // namespace

double BoundaryData::f_at(Edge e, Point p) const {
    switch (e) {
        case Edge::bottom: return table_at(f.bottom, edge_param(spec, e, p));
        case Edge::top: return table_at(f.top, edge_param(spec, e, p));
        case Edge::left: return table_at(f.left, edge_param(spec, e, p));
        case Edge::right: return table_at(f.right, edge_param(spec, e, p));
    }
    return 0.0;
}

double BoundaryData::g_at(Edge e, Point p) const {
    switch (e) {
        case Edge::bottom: return table_at(g.bottom, edge_param(spec, e, p));
        case Edge::top: return table_at(g.top, edge_param(spec, e, p));
        case Edge::left: return table_at(g.left, edge_param(spec, e, p));
        case Edge::right: return table_at(g.right, edge_param(spec, e, p));
    }
    return 0.0;
}

BoundaryData make_boundary_data(const MonitorFunction& m, const GridSpec& spec) {
    BoundaryData bd{spec,
                    EdgeData{solve_1d_boundary(m, spec, Edge::bottom),
                             solve_1d_boundary(m, spec, Edge::top),
                             std::vector<double>(spec.ny, 0.0),
                             std::vector<double>(spec.ny, 1.0)},
                    EdgeData{std::vector<double>(spec.nx, 0.0),
                             std::vector<double>(spec.nx, 1.0),
                             solve_1d_boundary(m, spec, Edge::left),
                             solve_1d_boundary(m, spec, Edge::right)}};
    return bd;
}

}  // namespace sdd
