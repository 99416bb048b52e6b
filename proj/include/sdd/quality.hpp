#pragma once

#include <optional>

#include "sdd/field.hpp"
#include "sdd/monitor.hpp"

namespace sdd {

struct QualityReport {
    double q_max = 0.0, q_mean = 0.0;
    std::optional<double> r_max, r_mean;  // reference q / mesh q
    std::optional<double> l_inf;          // max node-wise |rho(ref) - rho(mesh)|
};

// Geometric quality tr(J^T J) / (2 sqrt(det(J^T J))) >= 1 of cell (a, b), with
// J taken at the cell center from edge-averaged differences of the bilinear
// cell map. Folded or degenerate cells (det J <= 0) raise TanglingError.
double cell_quality(const PhysicalMesh& mesh, int a, int b);

QualityReport quality_report(const PhysicalMesh& mesh,
                             const PhysicalMesh* reference = nullptr,
                             const MonitorFunction* m = nullptr);

}  // namespace sdd
