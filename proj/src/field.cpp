#include "sdd/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sdd {

ScalarField::ScalarField(GridSpec s, double fill) : spec(s), values(s.size(), fill) {}

ScalarField::ScalarField(GridSpec s, std::vector<double> v)
    : spec(s), values(std::move(v)) {
    if (values.size() != spec.size()) {
        throw ValidationError("ScalarField: value count " + std::to_string(values.size()) +
                              " does not match grid " + std::to_string(spec.nx) + "x" +
                              std::to_string(spec.ny));
    }
}

void ScalarField::check_finite() const {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw EvaluationError("ScalarField: non-finite value");
        }
    }
}

double sample_bilinear(const ScalarField& field, Point p) {
    const GridSpec& g = field.spec;
    const RectDomain& d = g.domain;
    const double tol_x = 1e-12 * (1.0 + std::abs(d.xmin) + std::abs(d.xmax));
    const double tol_y = 1e-12 * (1.0 + std::abs(d.ymin) + std::abs(d.ymax));
    if (p.x < d.xmin - tol_x || p.x > d.xmax + tol_x || p.y < d.ymin - tol_y ||
        p.y > d.ymax + tol_y) {
        throw OutOfDomainError("sample_bilinear: point (" + std::to_string(p.x) + ", " +
                               std::to_string(p.y) + ") outside domain");
    }
    const double sx = (p.x - d.xmin) / g.hx();
    const double sy = (p.y - d.ymin) / g.hy();
    const int i = std::clamp(static_cast<int>(std::floor(sx)), 0, g.nx - 2);
    const int j = std::clamp(static_cast<int>(std::floor(sy)), 0, g.ny - 2);
    const double tx = sx - i;
    const double ty = sy - j;
    const double f00 = field.at(i, j);
    const double f10 = field.at(i + 1, j);
    const double f01 = field.at(i, j + 1);
    const double f11 = field.at(i + 1, j + 1);
    return (1.0 - ty) * ((1.0 - tx) * f00 + tx * f10) +
           ty * ((1.0 - tx) * f01 + tx * f11);
}

MeshSolution::MeshSolution(ScalarField xi_, ScalarField eta_)
    : xi(std::move(xi_)), eta(std::move(eta_)) {
    if (!xi.spec.same_shape(eta.spec)) {
        throw ValidationError("MeshSolution: xi and eta must share one grid");
    }
}

PhysicalMesh::PhysicalMesh(int mx, int me, RectDomain dom)
    : m_xi(mx), m_eta(me), domain(dom),
      x(static_cast<std::size_t>(mx) * me, 0.0),
      y(static_cast<std::size_t>(mx) * me, 0.0) {
    if (mx < 2 || me < 2) {
        throw ValidationError("PhysicalMesh: needs at least 2 nodes per axis");
    }
}

}  // namespace sdd
