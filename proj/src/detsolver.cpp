#include "sdd/detsolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sdd {

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw ValidationError("SolverConfig: tol must be > 0");
    if (max_iters < 0) throw ValidationError("SolverConfig: max_iters must be >= 0");
}

long SolverConfig::effective_max_iters(int nx, int ny) const {
    if (max_iters > 0) return max_iters;
    const long n = std::max(nx, ny);
    return 200L * n * n;
}

std::vector<double> solve_1d_boundary(const MonitorFunction& m, const GridSpec& spec,
                                      Edge edge) {
    const bool horizontal = (edge == Edge::bottom || edge == Edge::top);
    const int n = horizontal ? spec.nx : spec.ny;
    std::vector<double> rho(n);
    for (int k = 0; k < n; ++k) {
        Point p;
        switch (edge) {
            case Edge::bottom: p = spec.node(k, 0); break;
            case Edge::top: p = spec.node(k, spec.ny - 1); break;
            case Edge::left: p = spec.node(0, k); break;
            case Edge::right: p = spec.node(spec.nx - 1, k); break;
        }
        rho[k] = m.rho(p);
        if (!(rho[k] > 0.0)) {
            throw EvaluationError(std::string("solve_1d_boundary: non-positive density "
                                              "on edge ") +
                                  edge_name(edge));
        }
    }
    // Cumulative trapezoid; the uniform spacing cancels in the normalization.
    std::vector<double> u(n);
    u[0] = 0.0;
    for (int k = 1; k < n; ++k) u[k] = u[k - 1] + 0.5 * (rho[k - 1] + rho[k]);
    const double total = u[n - 1];
    for (int k = 1; k < n - 1; ++k) u[k] /= total;
    u[n - 1] = 1.0;
    return u;
}

namespace {

void check_edge_data(const EdgeData& bc, int nx, int ny) {
    if (static_cast<int>(bc.bottom.size()) != nx ||
        static_cast<int>(bc.top.size()) != nx ||
        static_cast<int>(bc.left.size()) != ny ||
        static_cast<int>(bc.right.size()) != ny) {
        throw ValidationError("solve_dirichlet: boundary array sizes do not match grid");
    }
    const auto corner_mismatch = [](double a, double b) {
        return std::abs(a - b) > 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    };
    if (corner_mismatch(bc.bottom.front(), bc.left.front()) ||
        corner_mismatch(bc.bottom.back(), bc.right.front()) ||
        corner_mismatch(bc.top.front(), bc.left.back()) ||
        corner_mismatch(bc.top.back(), bc.right.back())) {
        throw ValidationError("solve_dirichlet: boundary data disagrees at a corner");
    }
}

}  // namespace

SolveResult solve_dirichlet(const std::vector<double>& w, int nx, int ny, double hx,
                            double hy, const EdgeData& bc, const SolverConfig& cfg) {
    cfg.validate();
    if (nx < 3 || ny < 3) throw ValidationError("solve_dirichlet: grid too small");
    if (static_cast<int>(w.size()) != nx * ny) {
        throw ValidationError("solve_dirichlet: weight array size mismatch");
    }
    for (double v : w) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw EvaluationError("solve_dirichlet: non-positive diffusion weight");
        }
    }
    check_edge_data(bc, nx, ny);

    const auto id = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };

    // Half-point weights: east of (i,j) and north of (i,j).
    std::vector<double> cE(static_cast<std::size_t>(nx - 1) * ny);
    std::vector<double> cN(static_cast<std::size_t>(nx) * (ny - 1));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i)
            cE[static_cast<std::size_t>(j) * (nx - 1) + i] =
                0.5 * (w[id(i, j)] + w[id(i + 1, j)]);
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i < nx; ++i)
            cN[static_cast<std::size_t>(j) * nx + i] =
                0.5 * (w[id(i, j)] + w[id(i, j + 1)]);
    const auto wE = [&](int i, int j) {
        return cE[static_cast<std::size_t>(j) * (nx - 1) + i];
    };
    const auto wN = [&](int i, int j) { return cN[static_cast<std::size_t>(j) * nx + i]; };

    const double ihx2 = 1.0 / (hx * hx);
    const double ihy2 = 1.0 / (hy * hy);

    std::vector<double> inv_den(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int j = 1; j + 1 < ny; ++j)
        for (int i = 1; i + 1 < nx; ++i)
            inv_den[id(i, j)] = 1.0 / ((wE(i, j) + wE(i - 1, j)) * ihx2 +
                                       (wN(i, j) + wN(i, j - 1)) * ihy2);

    double bmin = bc.bottom[0], bmax = bc.bottom[0];
    for (const auto* arr : {&bc.bottom, &bc.top, &bc.left, &bc.right}) {
        for (double v : *arr) {
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
        }
    }

    // Initial guess: transfinite blend of the boundary data, clamped into the
    // boundary range so every Jacobi iterate stays inside it.
    std::vector<double> u(static_cast<std::size_t>(nx) * ny);
    if (cfg.init_blend) {
        for (int j = 0; j < ny; ++j) {
            const double ty = static_cast<double>(j) / (ny - 1);
            for (int i = 0; i < nx; ++i) {
                const double tx = static_cast<double>(i) / (nx - 1);
                const double xblend = (1.0 - tx) * bc.left[j] + tx * bc.right[j];
                const double yblend = (1.0 - ty) * bc.bottom[i] + ty * bc.top[i];
                const double bil = ((1.0 - tx) * (1.0 - ty) * bc.bottom.front() +
                                    tx * ty * bc.top.back()) +
                                   (tx * (1.0 - ty) * bc.bottom.back() +
                                    (1.0 - tx) * ty * bc.top.front());
                u[id(i, j)] = std::clamp(xblend + yblend - bil, bmin, bmax);
            }
        }
    } else {
        std::fill(u.begin(), u.end(), 0.5 * (bmin + bmax));
    }
    for (int i = 0; i < nx; ++i) {
        u[id(i, 0)] = bc.bottom[i];
        u[id(i, ny - 1)] = bc.top[i];
    }
    for (int j = 0; j < ny; ++j) {
        u[id(0, j)] = bc.left[j];
        u[id(nx - 1, j)] = bc.right[j];
    }

    std::vector<double> v = u;
    const long max_iters = cfg.effective_max_iters(nx, ny);
    long iters = 0;
    double upd = 0.0;
    double prev_upd = -1.0;
    bool converged = false;
    while (iters < max_iters) {
        ++iters;
        upd = 0.0;
        for (int j = 1; j + 1 < ny; ++j) {
            for (int i = 1; i + 1 < nx; ++i) {
                const std::size_t c = id(i, j);
                const double xpart =
                    (wE(i, j) * u[c + 1] + wE(i - 1, j) * u[c - 1]) * ihx2;
                const double ypart =
                    (wN(i, j) * u[c + nx] + wN(i, j - 1) * u[c - nx]) * ihy2;
                const double nu = (xpart + ypart) * inv_den[c];
                v[c] = nu;
                upd = std::max(upd, std::abs(nu - u[c]));
            }
        }
        u.swap(v);
        // Stop once the update norm and the geometric-decay error estimate
        // upd * rho / (1 - rho) are both below tol, so two different initial
        // guesses land within ~2*tol of each other.
        if (upd < cfg.tol) {
            if (upd == 0.0 || upd < 1e-4 * cfg.tol) {
                converged = true;
                break;
            }
            if (prev_upd > 0.0 && upd < prev_upd) {
                const double rho = upd / prev_upd;
                if (upd * rho / (1.0 - rho) < cfg.tol) {
                    converged = true;
                    break;
                }
            }
        }
        prev_upd = upd;
    }

    // Discrete maximum principle: positive-weight stencil keeps the interior
    // inside the boundary range.
    const double slack = 1e-12 * (1.0 + std::abs(bmin) + std::abs(bmax));
    for (int j = 1; j + 1 < ny; ++j)
        for (int i = 1; i + 1 < nx; ++i)
            if (u[id(i, j)] < bmin - slack || u[id(i, j)] > bmax + slack)
                throw NumericalError("solve_dirichlet: maximum principle violated at (" +
                                     std::to_string(i) + ", " + std::to_string(j) + ")");

    SolveResult res{ScalarField(GridSpec(RectDomain(0, hx * (nx - 1), 0, hy * (ny - 1)),
                                         nx, ny),
                                std::move(u)),
                    iters, upd, converged, std::string()};
    if (!converged) {
        res.warning = "Jacobi reached max_iters=" + std::to_string(max_iters) +
                      " with update " + std::to_string(upd);
    }
    return res;
}

SolveResult solve_dirichlet(const MonitorFunction& m, const GridSpec& spec,
                            const EdgeData& bc, const SolverConfig& cfg) {
    SolveResult res = solve_dirichlet(weight_values(m, spec), spec.nx, spec.ny, spec.hx(),
                                      spec.hy(), bc, cfg);
    res.field.spec = spec;
    return res;
}

std::vector<double> weight_values(const MonitorFunction& m, const GridSpec& spec) {
    std::vector<double> w(spec.size());
    for (int j = 0; j < spec.ny; ++j)
        for (int i = 0; i < spec.nx; ++i) w[spec.idx(i, j)] = m.weight(spec.node(i, j));
    return w;
}

MeshSolveResult solve_single_domain(const MonitorFunction& m, const GridSpec& spec,
                                    const SolverConfig& cfg) {
    EdgeData f{solve_1d_boundary(m, spec, Edge::bottom), solve_1d_boundary(m, spec, Edge::top),
               std::vector<double>(spec.ny, 0.0), std::vector<double>(spec.ny, 1.0)};
    EdgeData g{std::vector<double>(spec.nx, 0.0), std::vector<double>(spec.nx, 1.0),
               solve_1d_boundary(m, spec, Edge::left),
               solve_1d_boundary(m, spec, Edge::right)};
    const std::vector<double> w = weight_values(m, spec);
    SolveResult rx = solve_dirichlet(w, spec.nx, spec.ny, spec.hx(), spec.hy(), f, cfg);
    SolveResult re = solve_dirichlet(w, spec.nx, spec.ny, spec.hx(), spec.hy(), g, cfg);
    rx.field.spec = spec;
    re.field.spec = spec;

    MeshSolveResult out{MeshSolution(std::move(rx.field), std::move(re.field)),
                        rx.iterations, re.iterations,
                        rx.converged && re.converged,
                        {}};
    if (!rx.warning.empty()) out.warnings.push_back("xi: " + rx.warning);
    if (!re.warning.empty()) out.warnings.push_back("eta: " + re.warning);
    return out;
}

}  // namespace sdd
