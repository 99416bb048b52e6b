#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sdd/decomposition.hpp"
#include "sdd/smoothing.hpp"

using namespace sdd;

namespace {

GridSpec unit_grid(int n) { return GridSpec(RectDomain(0, 1, 0, 1), n, n); }

MeshSolution make_solution(const GridSpec& g, double (*fx)(double, double),
                           double (*fy)(double, double)) {
    ScalarField xi(g), eta(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Point p = g.node(i, j);
            xi.at(i, j) = fx(p.x, p.y);
            eta.at(i, j) = fy(p.x, p.y);
        }
    return MeshSolution{std::move(xi), std::move(eta)};
}

MeshSolution noisy_identity(const GridSpec& g, double sigma, std::uint32_t seed) {
    MeshSolution sol = make_solution(g, [](double x, double) { return x; },
                                     [](double, double y) { return y; });
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (int j = 1; j + 1 < g.ny; ++j)
        for (int i = 1; i + 1 < g.nx; ++i) {
            sol.xi.at(i, j) += noise(rng);
            sol.eta.at(i, j) += noise(rng);
        }
    return sol;
}

}  // namespace

TEST_CASE("zero steps is the identity bit for bit") {
    const GridSpec g = unit_grid(17);
    const MeshSolution sol = noisy_identity(g, 0.02, 1);
    SmoothConfig cfg;
    cfg.steps = 0;
    const MeshSolution out = perona_malik(sol, cfg);
    for (std::size_t k = 0; k < sol.xi.values.size(); ++k) {
        CHECK(out.xi.values[k] == sol.xi.values[k]);
        CHECK(out.eta.values[k] == sol.eta.values[k]);
    }
}

TEST_CASE("constant and linear fields are steady states") {
    const GridSpec g = unit_grid(17);
    SmoothConfig cfg;
    cfg.steps = 5;

    const MeshSolution flat = make_solution(g, [](double, double) { return 3.25; },
                                            [](double, double) { return -1.5; });
    const MeshSolution fs = perona_malik(flat, cfg);
    for (std::size_t k = 0; k < fs.xi.values.size(); ++k) {
        CHECK(fs.xi.values[k] == doctest::Approx(3.25).epsilon(1e-15));
        CHECK(fs.eta.values[k] == doctest::Approx(-1.5).epsilon(1e-15));
    }

    const MeshSolution lin = make_solution(g, [](double x, double) { return x; },
                                           [](double, double y) { return y; });
    const MeshSolution ls = perona_malik(lin, cfg);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            CHECK(std::abs(ls.xi.at(i, j) - g.node(i, j).x) <= 1e-12);
            CHECK(std::abs(ls.eta.at(i, j) - g.node(i, j).y) <= 1e-12);
        }
}

TEST_CASE("boundary and interface nodes are held fixed") {
    const GridSpec g = unit_grid(17);
    const MeshSolution sol = noisy_identity(g, 0.05, 3);
    SmoothConfig cfg;
    cfg.steps = 4;

    SUBCASE("global scope fixes the physical boundary") {
        const MeshSolution out = perona_malik(sol, cfg);
        for (int i = 0; i < g.nx; ++i) {
            CHECK(out.xi.at(i, 0) == sol.xi.at(i, 0));
            CHECK(out.xi.at(i, g.ny - 1) == sol.xi.at(i, g.ny - 1));
        }
        for (int j = 0; j < g.ny; ++j) {
            CHECK(out.eta.at(0, j) == sol.eta.at(0, j));
            CHECK(out.eta.at(g.nx - 1, j) == sol.eta.at(g.nx - 1, j));
        }
        bool interior_changed = false;
        for (int j = 1; j + 1 < g.ny; ++j)
            for (int i = 1; i + 1 < g.nx; ++i)
                interior_changed |= out.xi.at(i, j) != sol.xi.at(i, j);
        CHECK(interior_changed);
    }

    SUBCASE("per-subdomain scope also fixes the interface lines") {
        const SubdomainLayout lay = build_layout(g, 2, 2);
        SmoothConfig cfg2 = cfg;
        cfg2.scope = SmoothScope::per_subdomain;
        const MeshSolution out = perona_malik(sol, cfg2, &lay);
        for (int j = 0; j < g.ny; ++j) CHECK(out.xi.at(8, j) == sol.xi.at(8, j));
        for (int i = 0; i < g.nx; ++i) CHECK(out.eta.at(i, 8) == sol.eta.at(i, 8));
        CHECK_THROWS_AS(perona_malik(sol, cfg2, nullptr), ValidationError);
    }
}

TEST_CASE("FTCS extremum principle under the stability bound") {
    const GridSpec g = unit_grid(17);
    const MeshSolution sol = noisy_identity(g, 0.05, 5);
    SmoothConfig cfg;
    cfg.steps = 1;
    CHECK_FALSE(stability_warning(cfg, g).has_value());

    double lo = 1e30, hi = -1e30;
    for (double v : sol.xi.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const MeshSolution out = perona_malik(sol, cfg);
    for (double v : out.xi.values) {
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("smoothing reduces noise around the identity map") {
    const GridSpec g = unit_grid(29);
    const MeshSolution sol = noisy_identity(g, 0.01, 7);
    SmoothConfig cfg;
    cfg.steps = 5;
    const MeshSolution out = perona_malik(sol, cfg);
    double before = 0.0, after = 0.0;
    for (int j = 1; j + 1 < g.ny; ++j)
        for (int i = 1; i + 1 < g.nx; ++i) {
            const double x = g.node(i, j).x;
            before += (sol.xi.at(i, j) - x) * (sol.xi.at(i, j) - x);
            after += (out.xi.at(i, j) - x) * (out.xi.at(i, j) - x);
        }
    CHECK(after < before);
}

TEST_CASE("unstable time steps are detected") {
    const GridSpec g = unit_grid(17);
    MeshSolution sol = noisy_identity(g, 1e-4, 9);
    SmoothConfig cfg;
    cfg.k = 1e6;  // effectively the heat equation
    cfg.dt = 25.0 * g.hx() * g.hy() / 4.0;
    cfg.steps = 8;
    CHECK(stability_warning(cfg, g).has_value());
    CHECK_THROWS_AS(perona_malik(sol, cfg), NumericalError);
}

TEST_CASE("interface smoothing: reproduction, linearity, noise reduction") {
    SUBCASE("constants and quadratics are reproduced") {
        const std::vector<double> c(29, 2.5);
        const std::vector<double> cs = smooth_interface(c, 5);
        for (double v : cs) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));

        std::vector<double> q(29);
        for (int i = 0; i < 29; ++i) q[i] = 1.0 + 0.3 * i - 0.02 * i * i;
        const std::vector<double> qs = smooth_interface(q, 5);
        for (int i = 0; i < 29; ++i) CHECK(qs[i] == doctest::Approx(q[i]).epsilon(1e-12));
    }

    SUBCASE("endpoints keep their anchor values") {
        std::vector<double> v(15);
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-1, 1);
        for (auto& x : v) x = u(rng);
        const std::vector<double> s = smooth_interface(v, 5);
        CHECK(s.front() == v.front());
        CHECK(s.back() == v.back());
    }

    SUBCASE("linear in the input") {
        std::mt19937 rng(13);
        std::uniform_real_distribution<double> u(-1, 1);
        std::vector<double> a(21), b(21), mix(21);
        for (int i = 0; i < 21; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
            mix[i] = 2.0 * a[i] - 0.7 * b[i];
        }
        const auto sa = smooth_interface(a, 7);
        const auto sb = smooth_interface(b, 7);
        const auto sm = smooth_interface(mix, 7);
        for (int i = 0; i < 21; ++i)
            CHECK(sm[i] == doctest::Approx(2.0 * sa[i] - 0.7 * sb[i]).epsilon(1e-11));
    }

    SUBCASE("noise on a quadratic shrinks in RMS (Monte Carlo oracle)") {
        std::mt19937 rng(17);
        std::normal_distribution<double> noise(0.0, 0.01);
        double rms_before = 0.0, rms_after = 0.0;
        for (int draw = 0; draw < 100; ++draw) {
            std::vector<double> truth(29), v(29);
            for (int i = 0; i < 29; ++i) {
                const double s = i / 28.0;
                truth[i] = 0.2 + 0.8 * s - 0.3 * s * s;
                v[i] = truth[i] + noise(rng);
            }
            const std::vector<double> sm = smooth_interface(v, 5);
            for (int i = 1; i + 1 < 29; ++i) {
                rms_before += (v[i] - truth[i]) * (v[i] - truth[i]);
                rms_after += (sm[i] - truth[i]) * (sm[i] - truth[i]);
            }
        }
        CHECK(rms_after < rms_before);
    }

    SUBCASE("span validation") {
        const std::vector<double> v(9, 1.0);
        CHECK_THROWS_AS(smooth_interface(v, 4), ValidationError);
        CHECK_THROWS_AS(smooth_interface(v, 1), ValidationError);
        CHECK_THROWS_AS(smooth_interface(v, 11), ValidationError);
    }
}
