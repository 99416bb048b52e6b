#pragma once

#include <vector>

#include "sdd/geometry.hpp"

namespace sdd {

// Scalar nodal values on a uniform grid.
struct ScalarField {
    GridSpec spec;
    std::vector<double> values;

    ScalarField(GridSpec s, double fill = 0.0);
    ScalarField(GridSpec s, std::vector<double> v);

    double& at(int i, int j) { return values[spec.idx(i, j)]; }
    double at(int i, int j) const { return values[spec.idx(i, j)]; }

    void check_finite() const;
};

// Bilinear interpolation of the four nodes surrounding p; exact at nodes.
double sample_bilinear(const ScalarField& field, Point p);

// The computational coordinates xi(x,y), eta(x,y) on a shared grid.
struct MeshSolution {
    ScalarField xi;
    ScalarField eta;

    MeshSolution(ScalarField xi_, ScalarField eta_);
    const GridSpec& spec() const { return xi.spec; }
};

// Physical node positions x(xi_a, eta_b), y(xi_a, eta_b) of the adaptive mesh
// on a uniform m_xi x m_eta computational grid.
struct PhysicalMesh {
    int m_xi, m_eta;
    RectDomain domain;
    std::vector<double> x, y;

    PhysicalMesh(int mx, int me, RectDomain dom);

    std::size_t idx(int a, int b) const {
        return static_cast<std::size_t>(b) * static_cast<std::size_t>(m_xi) +
               static_cast<std::size_t>(a);
    }
    Point node(int a, int b) const { return {x[idx(a, b)], y[idx(a, b)]}; }
    bool same_shape(const PhysicalMesh& o) const {
        return m_xi == o.m_xi && m_eta == o.m_eta;
    }
};

}  // namespace sdd
