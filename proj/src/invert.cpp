#include "sdd/invert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdd/parallel.hpp"

namespace sdd {

namespace {

// Triangle t = 2*cell + half over the forward (xi, eta) images of the grid
// cells; half 0 is (P00, P10, P11), half 1 is (P00, P11, P01), split along
// the lower-left diagonal.
struct Tessellation {
    const MeshSolution& sol;
    int nx, ny;

    int cells_x() const { return nx - 1; }
    int cells_y() const { return ny - 1; }
    long tri_count() const { return 2L * cells_x() * cells_y(); }

    void vertices(long t, int idx[3][2]) const {
        const long cell = t / 2;
        const int half = static_cast<int>(t % 2);
        const int i = static_cast<int>(cell % cells_x());
        const int j = static_cast<int>(cell / cells_x());
        idx[0][0] = i;
        idx[0][1] = j;
        if (half == 0) {
            idx[1][0] = i + 1;
            idx[1][1] = j;
        } else {
            idx[1][0] = i + 1;
            idx[1][1] = j + 1;
        }
        if (half == 0) {
            idx[2][0] = i + 1;
            idx[2][1] = j + 1;
        } else {
            idx[2][0] = i;
            idx[2][1] = j + 1;
        }
    }

    // Neighbor across the edge opposite vertex k, or -1 on the hull.
    long neighbor(long t, int k) const {
        const long cell = t / 2;
        const int half = static_cast<int>(t % 2);
        const int i = static_cast<int>(cell % cells_x());
        const int j = static_cast<int>(cell / cells_x());
        const auto tri = [&](int ci, int cj, int h) -> long {
            if (ci < 0 || cj < 0 || ci >= cells_x() || cj >= cells_y()) return -1;
            return 2L * (static_cast<long>(cj) * cells_x() + ci) + h;
        };
        if (half == 0) {
            switch (k) {
                case 0: return tri(i + 1, j, 1);  // right edge
                case 1: return tri(i, j, 1);      // diagonal
                case 2: return tri(i, j - 1, 1);  // bottom edge
            }
        } else {
            switch (k) {
                case 0: return tri(i, j + 1, 0);  // top edge
                case 1: return tri(i - 1, j, 0);  // left edge
                case 2: return tri(i, j, 0);      // diagonal
            }
        }
        return -1;
    }
};

struct BaryResult {
    bool inside;
    double w[3];     // normalized barycentric coordinates
    double det;      // signed twice-area of the (xi, eta) triangle
    int exit_vertex; // most-outside coordinate when not inside
};

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

BaryResult barycentric(const Tessellation& tess, long t, double px, double py,
                       double tol) {
    int idx[3][2];
    tess.vertices(t, idx);
    double vx[3], vy[3];
    for (int k = 0; k < 3; ++k) {
        const std::size_t n = tess.sol.xi.spec.idx(idx[k][0], idx[k][1]);
        vx[k] = tess.sol.xi.values[n];
        vy[k] = tess.sol.eta.values[n];
    }
    BaryResult r{};
    r.det = cross(vx[1] - vx[0], vy[1] - vy[0], vx[2] - vx[0], vy[2] - vy[0]);
    if (r.det == 0.0) {
        r.inside = false;
        r.exit_vertex = -1;
        return r;
    }
    const double a0 = cross(vx[1] - px, vy[1] - py, vx[2] - px, vy[2] - py);
    const double a1 = cross(vx[2] - px, vy[2] - py, vx[0] - px, vy[0] - py);
    const double a2 = cross(vx[0] - px, vy[0] - py, vx[1] - px, vy[1] - py);
    r.w[0] = a0 / r.det;
    r.w[1] = a1 / r.det;
    r.w[2] = a2 / r.det;
    r.inside = r.w[0] >= -tol && r.w[1] >= -tol && r.w[2] >= -tol;
    r.exit_vertex = 0;
    if (r.w[1] < r.w[r.exit_vertex]) r.exit_vertex = 1;
    if (r.w[2] < r.w[r.exit_vertex]) r.exit_vertex = 2;
    return r;
}

long walk_locate(const Tessellation& tess, long start, double px, double py, double tol) {
    long t = start;
    const int limit = 2 * (tess.nx + tess.ny) + 16;
    for (int step = 0; step < limit; ++step) {
        const BaryResult r = barycentric(tess, t, px, py, tol);
        if (r.inside) return t;
        if (r.exit_vertex < 0) return -1;  // degenerate triangle, give up
        const long next = tess.neighbor(t, r.exit_vertex);
        if (next < 0) return -1;
        t = next;
    }
    return -1;
}

long scan_locate(const Tessellation& tess, double px, double py, double tol) {
    long flipped = -1;
    for (long t = 0; t < tess.tri_count(); ++t) {
        const BaryResult r = barycentric(tess, t, px, py, tol);
        if (!r.inside) continue;
        if (r.det > 0.0) return t;
        if (flipped < 0) flipped = t;
    }
    return flipped;
}

}  // namespace

PhysicalMesh invert_mesh(const MeshSolution& sol, int m_xi, int m_eta, int threads) {
    if (m_xi < 2 || m_eta < 2) {
        throw ValidationError("invert_mesh: needs at least 2 target nodes per axis");
    }
    sol.xi.check_finite();
    sol.eta.check_finite();
    const GridSpec& g = sol.spec();
    const Tessellation tess{sol, g.nx, g.ny};

    PhysicalMesh mesh(m_xi, m_eta, g.domain);
    constexpr double kWalkTol = 1e-12;
    constexpr double kSnapTol = 1e-9;

    parallel_for(static_cast<std::size_t>(m_eta), threads, [&](std::size_t bi) {
        const int b = static_cast<int>(bi);
        const double eta_b = static_cast<double>(b) / (m_eta - 1);
        long hint = -1;
        for (int a = 0; a < m_xi; ++a) {
            const double xi_a = static_cast<double>(a) / (m_xi - 1);
            if (hint < 0) {
                // Seed the walk from the cell a near-uniform mesh would use.
                const int ci = std::clamp(static_cast<int>(xi_a * (g.nx - 2)), 0,
                                          g.nx - 2);
                const int cj = std::clamp(static_cast<int>(eta_b * (g.ny - 2)), 0,
                                          g.ny - 2);
                hint = 2L * (static_cast<long>(cj) * (g.nx - 1) + ci);
            }
            long t = walk_locate(tess, hint, xi_a, eta_b, kWalkTol);
            if (t < 0) t = scan_locate(tess, xi_a, eta_b, kWalkTol);
            if (t < 0) t = scan_locate(tess, xi_a, eta_b, kSnapTol);
            if (t < 0) {
                throw InversionError("invert_mesh: target (" + std::to_string(a) + ", " +
                                     std::to_string(b) +
                                     ") not covered by the forward tessellation");
            }
            const BaryResult r = barycentric(tess, t, xi_a, eta_b, kSnapTol);
            if (r.det == 0.0) {
                throw InversionError("invert_mesh: degenerate forward triangle at "
                                     "target (" +
                                     std::to_string(a) + ", " + std::to_string(b) + ")");
            }
            int idx[3][2];
            tess.vertices(t, idx);
            double px = 0.0, py = 0.0;
            for (int k = 0; k < 3; ++k) {
                const Point node = g.node(idx[k][0], idx[k][1]);
                px += r.w[k] * node.x;
                py += r.w[k] * node.y;
            }
            const std::size_t out = mesh.idx(a, b);
            mesh.x[out] = px;
            mesh.y[out] = py;
            hint = t;
        }
    });
    return mesh;
}

}  // namespace sdd
