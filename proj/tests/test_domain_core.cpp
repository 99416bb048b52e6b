#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sdd/detsolver.hpp"
#include "sdd/field.hpp"
#include "sdd/invert.hpp"

using namespace sdd;

namespace {

GridSpec unit_grid(int n) { return GridSpec(RectDomain(0, 1, 0, 1), n, n); }

ScalarField field_of(const GridSpec& g, double (*f)(double, double)) {
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Point p = g.node(i, j);
            out.at(i, j) = f(p.x, p.y);
        }
    return out;
}

// Forward evaluation of the same triangulated piecewise-linear map the
// inversion inverts: locate the physical cell, pick the triangle by the side
// of the lower-left diagonal, interpolate linearly.
double forward_pl(const ScalarField& f, Point p) {
    const GridSpec& g = f.spec;
    const double sx = (p.x - g.domain.xmin) / g.hx();
    const double sy = (p.y - g.domain.ymin) / g.hy();
    const int i = std::clamp(static_cast<int>(std::floor(sx)), 0, g.nx - 2);
    const int j = std::clamp(static_cast<int>(std::floor(sy)), 0, g.ny - 2);
    const double tx = sx - i;
    const double ty = sy - j;
    const double f00 = f.at(i, j);
    const double f10 = f.at(i + 1, j);
    const double f01 = f.at(i, j + 1);
    const double f11 = f.at(i + 1, j + 1);
    if (tx >= ty) return f00 + tx * (f10 - f00) + ty * (f11 - f10);
    return f00 + ty * (f01 - f00) + tx * (f11 - f01);
}

}  // namespace

TEST_CASE("bilinear sampling reproduces the defining cases") {
    const GridSpec g = unit_grid(9);
    const ScalarField fx = field_of(g, [](double x, double) { return x; });
    CHECK(sample_bilinear(fx, {0.37, 0.9}) == doctest::Approx(0.37).epsilon(1e-14));

    ScalarField fc(g, 4.2);
    CHECK(sample_bilinear(fc, {0.123, 0.77}) == doctest::Approx(4.2).epsilon(1e-15));

    const GridSpec g3 = unit_grid(3);
    const ScalarField fxy = field_of(g3, [](double x, double y) { return x * y; });
    CHECK(sample_bilinear(fxy, {0.25, 0.25}) == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("bilinear sampling is exact at nodes and rejects outside points") {
    const GridSpec g = unit_grid(7);
    const ScalarField f = field_of(g, [](double x, double y) { return x * x + y; });
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Point p = g.node(i, j);
            CHECK(sample_bilinear(f, p) == doctest::Approx(f.at(i, j)).epsilon(1e-14));
        }
    CHECK_THROWS_AS(sample_bilinear(f, {1.5, 0.5}), OutOfDomainError);
    CHECK_THROWS_AS(sample_bilinear(f, {0.5, -0.2}), OutOfDomainError);
}

TEST_CASE("bilinear sampling reproduces global bilinear functions (property)") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coef(-3.0, 3.0), pt(0.0, 1.0);
    const GridSpec g = unit_grid(11);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
        ScalarField f(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const Point p = g.node(i, j);
                f.at(i, j) = a + b * p.x + c * p.y + d * p.x * p.y;
            }
        for (int k = 0; k < 20; ++k) {
            const Point p{pt(rng), pt(rng)};
            const double want = a + b * p.x + c * p.y + d * p.x * p.y;
            CHECK(sample_bilinear(f, p) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("inverting the identity solution gives the uniform grid") {
    const GridSpec g = unit_grid(9);
    MeshSolution sol{field_of(g, [](double x, double) { return x; }),
                     field_of(g, [](double, double y) { return y; })};
    const PhysicalMesh mesh = invert_mesh(sol, 5, 5);
    for (int b = 0; b < 5; ++b)
        for (int a = 0; a < 5; ++a) {
            CHECK(std::abs(mesh.node(a, b).x - a / 4.0) <= 1e-12);
            CHECK(std::abs(mesh.node(a, b).y - b / 4.0) <= 1e-12);
        }
}

TEST_CASE("inversion of xi = x^2 matches the 1D piecewise-linear inverse") {
    const GridSpec g = unit_grid(21);
    MeshSolution sol{field_of(g, [](double x, double) { return x * x; }),
                     field_of(g, [](double, double y) { return y; })};
    const int m = 9;
    const PhysicalMesh mesh = invert_mesh(sol, m, m);

    // Independent oracle: invert the sampled x^2 table along one row.
    std::vector<double> xs(g.nx), vals(g.nx);
    for (int i = 0; i < g.nx; ++i) {
        xs[i] = g.node(i, 0).x;
        vals[i] = xs[i] * xs[i];
    }
    for (int a = 0; a < m; ++a) {
        const double target = static_cast<double>(a) / (m - 1);
        int k = 0;
        while (k + 2 < g.nx && vals[k + 1] < target) ++k;
        const double t = (target - vals[k]) / (vals[k + 1] - vals[k]);
        const double want = xs[k] + t * (xs[k + 1] - xs[k]);
        for (int b = 0; b < m; ++b) {
            CHECK(std::abs(mesh.node(a, b).x - want) <= 1e-12);
        }
    }
    // Coarse sanity against the analytic inverse x = sqrt(xi).
    CHECK(std::abs(mesh.node(2, 4).x - std::sqrt(0.25)) <= 2.0 / (g.nx - 1));
}

TEST_CASE("forward map round-trip recovers the uniform targets (property)") {
    const GridSpec g = unit_grid(17);
    MeshSolution sol{
        field_of(g, [](double x, double y) { return 0.7 * x + 0.3 * x * x + 0.05 * x * y; }),
        field_of(g, [](double x, double y) { return 0.8 * y + 0.2 * y * y + 0.04 * x * y; })};
    const int m = 13;
    const PhysicalMesh mesh = invert_mesh(sol, m, m);
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < m; ++a) {
            const Point p = mesh.node(a, b);
            CHECK(std::abs(forward_pl(sol.xi, p) - static_cast<double>(a) / (m - 1)) <=
                  1e-10);
            CHECK(std::abs(forward_pl(sol.eta, p) - static_cast<double>(b) / (m - 1)) <=
                  1e-10);
        }
}

TEST_CASE("inversion failure names the offending target") {
    // eta covers only [0, 0.5]: upper targets are outside the tessellation.
    const GridSpec g = unit_grid(5);
    MeshSolution sol{field_of(g, [](double x, double) { return x; }),
                     field_of(g, [](double, double y) { return 0.5 * y; })};
    CHECK_THROWS_AS(invert_mesh(sol, 5, 5), InversionError);
}

TEST_CASE("running-example mesh concentrates at the density maximum") {
    const MonitorFunction m = MonitorFunction::running_example();
    const GridSpec g = unit_grid(29);
    SolverConfig cfg;
    const MeshSolveResult r = solve_single_domain(m, g, cfg);
    REQUIRE(r.converged);
    const PhysicalMesh mesh = invert_mesh(r.sol, 29, 29);

    // Narrowest column gap along the row nearest y = 1/2 sits nearest x = 3/4.
    const int b_mid = 14;
    int best_a = 0;
    double best_gap = 1e30;
    for (int a = 0; a + 1 < mesh.m_xi; ++a) {
        const double gap = mesh.node(a + 1, b_mid).x - mesh.node(a, b_mid).x;
        if (gap < best_gap) {
            best_gap = gap;
            best_a = a;
        }
    }
    const double gap_center =
        0.5 * (mesh.node(best_a, b_mid).x + mesh.node(best_a + 1, b_mid).x);
    CHECK(std::abs(gap_center - 0.75) <= 0.06);
}
