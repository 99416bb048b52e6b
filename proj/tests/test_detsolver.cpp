#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sdd/detsolver.hpp"
#include "sdd/invert.hpp"
#include "sdd/quality.hpp"

using namespace sdd;

namespace {

GridSpec unit_grid(int n) { return GridSpec(RectDomain(0, 1, 0, 1), n, n); }

EdgeData edge_data_of(const GridSpec& g, double (*f)(double, double)) {
    EdgeData bc{std::vector<double>(g.nx), std::vector<double>(g.nx),
                std::vector<double>(g.ny), std::vector<double>(g.ny)};
    for (int i = 0; i < g.nx; ++i) {
        const Point b = g.node(i, 0), t = g.node(i, g.ny - 1);
        bc.bottom[i] = f(b.x, b.y);
        bc.top[i] = f(t.x, t.y);
    }
    for (int j = 0; j < g.ny; ++j) {
        const Point l = g.node(0, j), r = g.node(g.nx - 1, j);
        bc.left[j] = f(l.x, l.y);
        bc.right[j] = f(r.x, r.y);
    }
    return bc;
}

// Independent oracle: assemble the conservative stencil as a dense linear
// system over the interior unknowns and solve it by Gaussian elimination.
ScalarField dense_solve(const std::vector<double>& w, const GridSpec& g,
                        const EdgeData& bc) {
    const int nx = g.nx, ny = g.ny;
    const int m = (nx - 2) * (ny - 2);
    const auto wid = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
    const auto unk = [nx](int i, int j) { return (j - 1) * (nx - 2) + (i - 1); };
    const double ihx2 = 1.0 / (g.hx() * g.hx());
    const double ihy2 = 1.0 / (g.hy() * g.hy());

    std::vector<double> A(static_cast<std::size_t>(m) * m, 0.0), rhs(m, 0.0);
    ScalarField u(g);
    for (int i = 0; i < nx; ++i) {
        u.at(i, 0) = bc.bottom[i];
        u.at(i, ny - 1) = bc.top[i];
    }
    for (int j = 0; j < ny; ++j) {
        u.at(0, j) = bc.left[j];
        u.at(nx - 1, j) = bc.right[j];
    }

    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const int row = unk(i, j);
            const double wE = 0.5 * (w[wid(i, j)] + w[wid(i + 1, j)]) * ihx2;
            const double wW = 0.5 * (w[wid(i, j)] + w[wid(i - 1, j)]) * ihx2;
            const double wN = 0.5 * (w[wid(i, j)] + w[wid(i, j + 1)]) * ihy2;
            const double wS = 0.5 * (w[wid(i, j)] + w[wid(i, j - 1)]) * ihy2;
            A[static_cast<std::size_t>(row) * m + row] = wE + wW + wN + wS;
            const auto couple = [&](int ii, int jj, double c) {
                if (ii == 0 || jj == 0 || ii == nx - 1 || jj == ny - 1) {
                    rhs[row] += c * u.at(ii, jj);
                } else {
                    A[static_cast<std::size_t>(row) * m + unk(ii, jj)] = -c;
                }
            };
            couple(i + 1, j, wE);
            couple(i - 1, j, wW);
            couple(i, j + 1, wN);
            couple(i, j - 1, wS);
        }
    }

    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(A[static_cast<std::size_t>(r) * m + col]) >
                std::abs(A[static_cast<std::size_t>(piv) * m + col]))
                piv = r;
        if (piv != col) {
            for (int c = 0; c < m; ++c)
                std::swap(A[static_cast<std::size_t>(col) * m + c],
                          A[static_cast<std::size_t>(piv) * m + c]);
            std::swap(rhs[col], rhs[piv]);
        }
        const double d = A[static_cast<std::size_t>(col) * m + col];
        for (int r = col + 1; r < m; ++r) {
            const double factor = A[static_cast<std::size_t>(r) * m + col] / d;
            if (factor == 0.0) continue;
            for (int c = col; c < m; ++c)
                A[static_cast<std::size_t>(r) * m + c] -=
                    factor * A[static_cast<std::size_t>(col) * m + c];
            rhs[r] -= factor * rhs[col];
        }
    }
    for (int row = m - 1; row >= 0; --row) {
        double s = rhs[row];
        for (int c = row + 1; c < m; ++c)
            s -= A[static_cast<std::size_t>(row) * m + c] * rhs[c];
        rhs[row] = s / A[static_cast<std::size_t>(row) * m + row];
    }
    for (int j = 1; j + 1 < ny; ++j)
        for (int i = 1; i + 1 < nx; ++i) u.at(i, j) = rhs[unk(i, j)];
    return u;
}

}  // namespace

TEST_CASE("1D boundary solve: uniform density gives uniform spacing") {
    const MonitorFunction m = MonitorFunction::constant();
    const GridSpec g = unit_grid(5);
    const std::vector<double> u = solve_1d_boundary(m, g, Edge::bottom);
    const std::vector<double> want{0.0, 0.25, 0.5, 0.75, 1.0};
    REQUIRE(u.size() == want.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        CHECK(u[k] == doctest::Approx(want[k]).epsilon(1e-14));
}

TEST_CASE("1D boundary solve: piecewise density matches the closed form") {
    const MonitorFunction m = MonitorFunction::user_supplied(
        [](Point p) { return p.x < 0.5 ? 1.0 : 3.0; }, RectDomain(0, 1, 0, 1));
    const GridSpec g(RectDomain(0, 1, 0, 1), 101, 3);
    const std::vector<double> u = solve_1d_boundary(m, g, Edge::bottom);
    // u(1/2) = (1/2) / (1/2 + 3/2) = 0.25 up to trapezoid error.
    CHECK(std::abs(u[50] - 0.25) <= 2.0 / 101);
    for (std::size_t k = 1; k < u.size(); ++k) CHECK(u[k] > u[k - 1]);
    CHECK(u.front() == 0.0);
    CHECK(u.back() == 1.0);
}

TEST_CASE("1D boundary solve: running-example bottom edge is nearly uniform") {
    const MonitorFunction m = MonitorFunction::running_example();
    const GridSpec g = unit_grid(29);
    const std::vector<double> u = solve_1d_boundary(m, g, Edge::bottom);
    for (int k = 0; k < 29; ++k) CHECK(std::abs(u[k] - k / 28.0) <= 1e-4);
}

TEST_CASE("solve_dirichlet reproduces linear data exactly") {
    const GridSpec g = unit_grid(17);
    SolverConfig cfg;
    cfg.tol = 1e-10;
    const MonitorFunction m = MonitorFunction::constant();
    const SolveResult r =
        solve_dirichlet(m, g, edge_data_of(g, [](double x, double) { return x; }), cfg);
    REQUIRE(r.converged);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            CHECK(std::abs(r.field.at(i, j) - g.node(i, j).x) <= 1e-7);
}

TEST_CASE("solve_dirichlet matches a dense direct solve") {
    const GridSpec g = unit_grid(9);
    SolverConfig cfg;
    cfg.tol = 1e-12;

    SUBCASE("w = 1, f = xy (discretely harmonic)") {
        const MonitorFunction m = MonitorFunction::constant();
        const std::vector<double> w = weight_values(m, g);
        const EdgeData bc = edge_data_of(g, [](double x, double y) { return x * y; });
        const SolveResult r = solve_dirichlet(w, g.nx, g.ny, g.hx(), g.hy(), bc, cfg);
        const ScalarField oracle = dense_solve(w, g, bc);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const Point p = g.node(i, j);
                CHECK(std::abs(r.field.at(i, j) - p.x * p.y) <= 1e-8);
                CHECK(std::abs(r.field.at(i, j) - oracle.at(i, j)) <= 1e-9);
            }
    }

    SUBCASE("running-example weights") {
        const MonitorFunction m = MonitorFunction::running_example();
        const std::vector<double> w = weight_values(m, g);
        const EdgeData bc = edge_data_of(g, [](double x, double) { return x; });
        const SolveResult r = solve_dirichlet(w, g.nx, g.ny, g.hx(), g.hy(), bc, cfg);
        const ScalarField oracle = dense_solve(w, g, bc);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                CHECK(std::abs(r.field.at(i, j) - oracle.at(i, j)) <= 1e-7);
    }
}

TEST_CASE("maximum principle and boundary handling") {
    const GridSpec g = unit_grid(17);
    SolverConfig cfg;
    const MonitorFunction m = MonitorFunction::running_example();
    const EdgeData bc = edge_data_of(g, [](double x, double y) { return x + 0.2 * y; });
    const SolveResult r = solve_dirichlet(m, g, bc, cfg);
    double bmin = 1e30, bmax = -1e30;
    for (const auto* arr : {&bc.bottom, &bc.top, &bc.left, &bc.right})
        for (double v : *arr) {
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
        }
    for (double v : r.field.values) {
        CHECK(v >= bmin - 1e-12);
        CHECK(v <= bmax + 1e-12);
    }
}

TEST_CASE("update norm is non-increasing after a transient") {
    const GridSpec g = unit_grid(17);
    const MonitorFunction m = MonitorFunction::running_example();
    const EdgeData bc = edge_data_of(g, [](double x, double) { return x; });
    double prev = 1e30;
    for (long k = 20; k <= 120; k += 10) {
        SolverConfig cfg;
        cfg.tol = 1e-300;
        cfg.max_iters = k;
        const SolveResult r = solve_dirichlet(m, g, bc, cfg);
        CHECK(r.final_update <= prev * (1.0 + 1e-9));
        prev = r.final_update;
    }
}

TEST_CASE("solution is independent of the initial guess") {
    const GridSpec g = unit_grid(17);
    const MonitorFunction m = MonitorFunction::running_example();
    const EdgeData bc = edge_data_of(g, [](double x, double y) { return x * x + y; });
    SolverConfig a, b;
    a.tol = b.tol = 1e-9;
    b.init_blend = false;
    const SolveResult ra = solve_dirichlet(m, g, bc, a);
    const SolveResult rb = solve_dirichlet(m, g, bc, b);
    for (std::size_t k = 0; k < ra.field.values.size(); ++k)
        CHECK(std::abs(ra.field.values[k] - rb.field.values[k]) <= 10.0 * a.tol);
}

TEST_CASE("refinement consistency for the uniform weight") {
    const MonitorFunction m = MonitorFunction::constant();
    for (int n : {5, 9, 17, 33}) {
        const GridSpec g = unit_grid(n);
        SolverConfig cfg;
        cfg.tol = 1e-13;
        const SolveResult r =
            solve_dirichlet(m, g, edge_data_of(g, [](double x, double) { return x; }), cfg);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                CHECK(std::abs(r.field.at(i, j) - g.node(i, j).x) <= 1e-10);
    }
}

TEST_CASE("transposing the weights transposes the solution bit for bit") {
    const int nx = 13, ny = 9;
    const GridSpec g(RectDomain(0, 1, 0, 1), nx, ny);
    const GridSpec gt(RectDomain(0, 1, 0, 1), ny, nx);
    const MonitorFunction m = MonitorFunction::running_example();

    std::vector<double> w(g.size()), wt(gt.size());
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double v = m.weight(g.node(i, j));
            w[g.idx(i, j)] = v;
            wt[gt.idx(j, i)] = v;
        }
    EdgeData bc{std::vector<double>(nx), std::vector<double>(nx),
                std::vector<double>(ny), std::vector<double>(ny)};
    for (int i = 0; i < nx; ++i) {
        bc.bottom[i] = 0.1 * i;
        bc.top[i] = 0.05 * i * i;
    }
    for (int j = 0; j < ny; ++j) {
        bc.left[j] = 0.0;
        bc.right[j] = bc.bottom[nx - 1] + j * (bc.top[nx - 1] - bc.bottom[nx - 1]) / (ny - 1);
    }
    bc.left[0] = bc.bottom[0];
    bc.left[ny - 1] = bc.top[0];
    const EdgeData bct{bc.left, bc.right, bc.bottom, bc.top};

    SolverConfig cfg;
    const SolveResult r = solve_dirichlet(w, nx, ny, g.hx(), g.hy(), bc, cfg);
    const SolveResult rt = solve_dirichlet(wt, ny, nx, g.hy(), g.hx(), bct, cfg);
    REQUIRE(r.iterations == rt.iterations);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            CHECK(r.field.values[g.idx(i, j)] == rt.field.values[gt.idx(j, i)]);
}

TEST_CASE("non-convergence returns a warning but still a result") {
    const GridSpec g = unit_grid(17);
    const MonitorFunction m = MonitorFunction::running_example();
    SolverConfig cfg;
    cfg.max_iters = 3;
    const SolveResult r =
        solve_dirichlet(m, g, edge_data_of(g, [](double x, double) { return x; }), cfg);
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.warning.empty());
    CHECK(r.field.values.size() == g.size());
}

TEST_CASE("single-domain solve with the uniform weight is the identity map") {
    const MonitorFunction m = MonitorFunction::constant();
    const GridSpec g = unit_grid(29);
    SolverConfig cfg;
    const MeshSolveResult r = solve_single_domain(m, g, cfg);
    REQUIRE(r.converged);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Point p = g.node(i, j);
            CHECK(std::abs(r.sol.xi.at(i, j) - p.x) <= 1e-7);
            CHECK(std::abs(r.sol.eta.at(i, j) - p.y) <= 1e-7);
        }
}

TEST_CASE("running-example 29x29 quality stays in the regression band") {
    const MonitorFunction m = MonitorFunction::running_example();
    const GridSpec g = unit_grid(29);
    SolverConfig cfg;
    const MeshSolveResult r = solve_single_domain(m, g, cfg);
    REQUIRE(r.converged);
    const PhysicalMesh mesh = invert_mesh(r.sol, 29, 29);
    const QualityReport q = quality_report(mesh);
    // Adapted but untangled: a uniform mesh (1.0) or a blow-up would both trip.
    CHECK(q.q_max >= 1.45);
    CHECK(q.q_max <= 1.70);
    CHECK(q.q_mean >= 1.05);
    CHECK(q.q_mean <= 1.12);
}
