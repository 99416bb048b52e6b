#include "sdd/quality.hpp"

#include <cmath>
#include <string>

namespace sdd {

double cell_quality(const PhysicalMesh& mesh, int a, int b) {
    if (a < 0 || b < 0 || a + 1 >= mesh.m_xi || b + 1 >= mesh.m_eta) {
        throw ValidationError("cell_quality: cell (" + std::to_string(a) + ", " +
                              std::to_string(b) + ") out of range");
    }
    const double dxi = 1.0 / (mesh.m_xi - 1);
    const double deta = 1.0 / (mesh.m_eta - 1);
    const Point p00 = mesh.node(a, b);
    const Point p10 = mesh.node(a + 1, b);
    const Point p01 = mesh.node(a, b + 1);
    const Point p11 = mesh.node(a + 1, b + 1);

    const double x_xi = 0.5 * ((p10.x - p00.x) + (p11.x - p01.x)) / dxi;
    const double y_xi = 0.5 * ((p10.y - p00.y) + (p11.y - p01.y)) / dxi;
    const double x_eta = 0.5 * ((p01.x - p00.x) + (p11.x - p10.x)) / deta;
    const double y_eta = 0.5 * ((p01.y - p00.y) + (p11.y - p10.y)) / deta;

    const double det = x_xi * y_eta - x_eta * y_xi;
    const double tr = x_xi * x_xi + y_xi * y_xi + x_eta * x_eta + y_eta * y_eta;
    if (!std::isfinite(det) || det <= 0.0) {
        throw TanglingError("cell (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") is folded or degenerate (det J = " + std::to_string(det) +
                            ")");
    }
    return 0.5 * tr / det;
}

QualityReport quality_report(const PhysicalMesh& mesh, const PhysicalMesh* reference,
                             const MonitorFunction* m) {
    if (reference && !mesh.same_shape(*reference)) {
        throw ValidationError("quality_report: meshes have different node counts");
    }
    QualityReport rep;
    double sum = 0.0;
    double qmax = 0.0;
    const long cells = static_cast<long>(mesh.m_xi - 1) * (mesh.m_eta - 1);
    for (int b = 0; b + 1 < mesh.m_eta; ++b) {
        for (int a = 0; a + 1 < mesh.m_xi; ++a) {
            const double q = cell_quality(mesh, a, b);
            sum += q;
            qmax = std::max(qmax, q);
        }
    }
    rep.q_max = qmax;
    rep.q_mean = sum / cells;

    if (reference) {
        double rsum = 0.0;
        double rqmax = 0.0;
        for (int b = 0; b + 1 < reference->m_eta; ++b) {
            for (int a = 0; a + 1 < reference->m_xi; ++a) {
                const double q = cell_quality(*reference, a, b);
                rsum += q;
                rqmax = std::max(rqmax, q);
            }
        }
        rep.r_max = rqmax / rep.q_max;
        rep.r_mean = (rsum / cells) / rep.q_mean;

        if (m) {
            double linf = 0.0;
            for (std::size_t k = 0; k < mesh.x.size(); ++k) {
                const double rho_ref = m->rho({reference->x[k], reference->y[k]});
                const double rho_mesh = m->rho({mesh.x[k], mesh.y[k]});
                linf = std::max(linf, std::abs(rho_ref - rho_mesh));
            }
            rep.l_inf = linf;
        }
    }
    return rep;
}

}  // namespace sdd
