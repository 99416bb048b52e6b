#pragma once

#include "sdd/detsolver.hpp"

namespace sdd {

// Dirichlet boundary data of the generator, tabulated at the grid's boundary
// nodes: f is the xi data (0 left, 1 right, 1D equidistribution bottom/top),
// g the eta data (0 bottom, 1 top, 1D equidistribution left/right). Values
// between table nodes are linearly interpolated. Built through the same path
// the deterministic solver uses for its boundary conditions.
struct BoundaryData {
    GridSpec spec;
    EdgeData f, g;

    double f_at(Edge e, Point p) const;
    double g_at(Edge e, Point p) const;
};

BoundaryData make_boundary_data(const MonitorFunction& m, const GridSpec& spec);

}  // namespace sdd
