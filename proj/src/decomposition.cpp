#include "sdd/decomposition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>

#include "sdd/parallel.hpp"
#include "sdd/smoothing.hpp"

namespace sdd {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Subdomain SubdomainLayout::subdomain(int a, int b) const {
    return Subdomain{a * block_x, b * block_y, block_x + 1, block_y + 1};
}

SubdomainLayout build_layout(const GridSpec& spec, int n_sub_x, int n_sub_y) {
    if (n_sub_x < 1 || n_sub_y < 1) {
        throw LayoutError("build_layout: subdomain counts must be >= 1");
    }
    if ((spec.nx - 1) % n_sub_x != 0) {
        throw LayoutError("build_layout: nx-1=" + std::to_string(spec.nx - 1) +
                          " not divisible by " + std::to_string(n_sub_x) + " (x axis)");
    }
    if ((spec.ny - 1) % n_sub_y != 0) {
        throw LayoutError("build_layout: ny-1=" + std::to_string(spec.ny - 1) +
                          " not divisible by " + std::to_string(n_sub_y) + " (y axis)");
    }
    SubdomainLayout lay{spec, n_sub_x, n_sub_y, (spec.nx - 1) / n_sub_x,
                        (spec.ny - 1) / n_sub_y,
                        {}};
    if (lay.block_x < 2 || lay.block_y < 2) {
        throw LayoutError("build_layout: subdomains need at least 3 nodes per axis");
    }
    for (int a = 1; a < n_sub_x; ++a) {
        const int i = a * lay.block_x;
        lay.lines.push_back(InterfaceLine{true, i, spec.node(i, 0).x, spec.ny});
    }
    for (int b = 1; b < n_sub_y; ++b) {
        const int j = b * lay.block_y;
        lay.lines.push_back(InterfaceLine{false, j, spec.node(0, j).y, spec.nx});
    }
    return lay;
}

namespace {

Point line_node(const GridSpec& g, const InterfaceLine& line, int pos) {
    return line.vertical ? g.node(line.fixed_index, pos) : g.node(pos, line.fixed_index);
}

std::uint64_t line_node_gid(const GridSpec& g, const InterfaceLine& line, int pos) {
    return line.vertical ? g.idx(line.fixed_index, pos) : g.idx(pos, line.fixed_index);
}

// Strict discrete local extrema of v over interior indices, ignoring entries
// below a relative magnitude floor (suppresses roundoff wiggles in flat
// regions).
void mark_extrema(const std::vector<double>& v, std::vector<char>& marks) {
    const int n = static_cast<int>(v.size());
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    const double floor_mag = 1e-9 * vmax;
    for (int i = 1; i + 1 < n; ++i) {
        if (std::abs(v[i]) < floor_mag) continue;
        const bool is_max = v[i] > v[i - 1] && v[i] > v[i + 1];
        const bool is_min = v[i] < v[i - 1] && v[i] < v[i + 1];
        if (is_max || is_min) marks[i] = 1;
    }
}

std::vector<int> optimal_line_points(const MonitorFunction& m, const GridSpec& g,
                                     const InterfaceLine& line) {
    const int n = line.length;
    const double h = line.vertical ? g.hy() : g.hx();
    // First derivative of rho along the line (analytic), second derivative by
    // central differences of the first at the neighboring nodes.
    std::vector<double> d1(n);
    for (int pos = 0; pos < n; ++pos) {
        const Point grad = m.grad_rho(line_node(g, line, pos));
        d1[pos] = line.vertical ? grad.y : grad.x;
    }
    std::vector<double> d2(n, 0.0);
    for (int pos = 1; pos + 1 < n; ++pos) d2[pos] = (d1[pos + 1] - d1[pos - 1]) / (2.0 * h);

    std::vector<char> marks(n, 0);
    mark_extrema(d1, marks);
    mark_extrema(d2, marks);

    std::vector<int> picked;
    constexpr int kMinSep = 2;
    for (int pos = 1; pos + 1 < n; ++pos) {
        if (!marks[pos]) continue;
        if (!picked.empty() && pos - picked.back() < kMinSep) continue;
        picked.push_back(pos);
    }
    if (picked.empty()) picked.push_back(n / 2);
    return picked;
}

}  // namespace

InterfacePlan plan_interface_points(PlacementStrategy strategy, int k,
                                    const MonitorFunction& m,
                                    const SubdomainLayout& layout) {
    InterfacePlan plan{strategy, k, {}};
    plan.stochastic.reserve(layout.lines.size());
    for (const InterfaceLine& line : layout.lines) {
        const int n = line.length;
        std::vector<int> nodes;
        switch (strategy) {
            case PlacementStrategy::all:
                for (int pos = 1; pos + 1 < n; ++pos) nodes.push_back(pos);
                break;
            case PlacementStrategy::equispaced: {
                if (k < 1 || k > n - 2) {
                    throw ValidationError("plan_interface_points: equispaced count " +
                                          std::to_string(k) + " not in [1, " +
                                          std::to_string(n - 2) + "]");
                }
                for (int j = 1; j <= k; ++j) {
                    const int pos = static_cast<int>(
                        std::lround(static_cast<double>(j) * (n - 1) / (k + 1)));
                    nodes.push_back(std::clamp(pos, 1, n - 2));
                }
                nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
                break;
            }
            case PlacementStrategy::optimal:
                nodes = optimal_line_points(m, layout.global, line);
                break;
        }
        plan.stochastic.push_back(std::move(nodes));
    }
    return plan;
}

InterfaceSolution solve_interfaces(const InterfacePlan& plan, const MonitorFunction& m,
                                   const BoundaryData& bd, const WalkConfig& wcfg,
                                   const SubdomainLayout& layout, int threads) {
    const GridSpec& g = layout.global;
    const auto& lines = layout.lines;
    if (plan.stochastic.size() != lines.size()) {
        throw ValidationError("solve_interfaces: plan does not match layout");
    }

    // One Monte Carlo estimate per unique global node; crossings shared by two
    // lines are solved once and reused by both.
    std::map<std::uint64_t, std::size_t> index_of;
    std::vector<Point> points;
    std::vector<std::uint64_t> gids;
    for (std::size_t l = 0; l < lines.size(); ++l) {
        for (int pos : plan.stochastic[l]) {
            const std::uint64_t gid = line_node_gid(g, lines[l], pos);
            if (index_of.emplace(gid, points.size()).second) {
                points.push_back(line_node(g, lines[l], pos));
                gids.push_back(gid);
            }
        }
    }

    std::vector<McEstimate> est(points.size());
    parallel_for(points.size(), threads, [&](std::size_t n) {
        est[n] = mc_estimate(points[n], gids[n], m, g.domain, bd, wcfg, 1);
    });

    InterfaceSolution out;
    out.mc_points = static_cast<long>(points.size());
    for (const McEstimate& e : est) {
        out.restarts += e.restarts;
        if (e.reliability_warning) {
            out.warnings.push_back("interface point restart fraction above 1%");
        }
    }

    out.xi.resize(lines.size());
    out.eta.resize(lines.size());
    out.se_xi.resize(lines.size());
    out.se_eta.resize(lines.size());
    for (std::size_t l = 0; l < lines.size(); ++l) {
        const InterfaceLine& line = lines[l];
        const int n = line.length;
        std::vector<double> xi(n, 0.0), eta(n, 0.0), sx(n, 0.0), se(n, 0.0);
        std::vector<char> known(n, 0);

        // Endpoint anchors are boundary nodes; read the tables directly so the
        // values match the subdomain corner data bit for bit.
        const int fi = line.fixed_index;
        xi[0] = line.vertical ? bd.f.bottom[fi] : bd.f.left[fi];
        eta[0] = line.vertical ? bd.g.bottom[fi] : bd.g.left[fi];
        xi[n - 1] = line.vertical ? bd.f.top[fi] : bd.f.right[fi];
        eta[n - 1] = line.vertical ? bd.g.top[fi] : bd.g.right[fi];
        known[0] = known[n - 1] = 1;

        for (int pos = 1; pos + 1 < n; ++pos) {
            const auto it = index_of.find(line_node_gid(g, line, pos));
            if (it == index_of.end()) continue;
            const McEstimate& e = est[it->second];
            xi[pos] = e.xi;
            eta[pos] = e.eta;
            sx[pos] = e.stderr_xi;
            se[pos] = e.stderr_eta;
            known[pos] = 1;
        }

        int prev = 0;
        for (int pos = 1; pos < n; ++pos) {
            if (!known[pos]) continue;
            for (int q = prev + 1; q < pos; ++q) {
                const double t = static_cast<double>(q - prev) / (pos - prev);
                xi[q] = (1.0 - t) * xi[prev] + t * xi[pos];
                eta[q] = (1.0 - t) * eta[prev] + t * eta[pos];
            }
            prev = pos;
        }

        out.xi[l] = std::move(xi);
        out.eta[l] = std::move(eta);
        out.se_xi[l] = std::move(sx);
        out.se_eta[l] = std::move(se);
    }

    // Make interpolated values agree where two lines cross (the vertical
    // line's value is canonical); MC-known crossings already coincide since
    // both lines read the same estimate.
    for (std::size_t lv = 0; lv < lines.size(); ++lv) {
        if (!lines[lv].vertical) continue;
        for (std::size_t lh = 0; lh < lines.size(); ++lh) {
            if (lines[lh].vertical) continue;
            const int iv = lines[lv].fixed_index;
            const int jh = lines[lh].fixed_index;
            const std::uint64_t gid = g.idx(iv, jh);
            if (index_of.count(gid)) continue;
            out.xi[lh][iv] = out.xi[lv][jh];
            out.eta[lh][iv] = out.eta[lv][jh];
        }
    }
    return out;
}

namespace {

std::vector<double> slice_line(const std::vector<double>& line_values, int lo, int len) {
    return std::vector<double>(line_values.begin() + lo, line_values.begin() + lo + len);
}

std::vector<double> slice_edge_table(const std::vector<double>& table, int lo, int len) {
    return std::vector<double>(table.begin() + lo, table.begin() + lo + len);
}

}  // namespace

SddResult solve_sdd(const MonitorFunction& m, const SubdomainLayout& layout,
                    const InterfacePlan& plan, const WalkConfig& wcfg,
                    const SolverConfig& scfg, const SddOptions& opts, int threads) {
    const GridSpec& g = layout.global;
    const auto tb0 = std::chrono::steady_clock::now();
    const BoundaryData bd = make_boundary_data(m, g);
    const double t_bd = seconds_since(tb0);

    const auto t0 = std::chrono::steady_clock::now();
    InterfaceSolution ifc = solve_interfaces(plan, m, bd, wcfg, layout, threads);
    const double t_stoc = ifc.mc_points > 0 ? seconds_since(t0) : 0.0;

    double t_smooth = 0.0;
    if (opts.smooth_interface) {
        const auto ts = std::chrono::steady_clock::now();
        for (std::size_t l = 0; l < ifc.xi.size(); ++l) {
            ifc.xi[l] = smooth_interface(ifc.xi[l], opts.smooth_span);
            ifc.eta[l] = smooth_interface(ifc.eta[l], opts.smooth_span);
        }
        t_smooth = seconds_since(ts);
    }

    // Index of the vertical line at global column i / horizontal line at row j.
    std::map<int, std::size_t> vline, hline;
    for (std::size_t l = 0; l < layout.lines.size(); ++l) {
        if (layout.lines[l].vertical) vline[layout.lines[l].fixed_index] = l;
        else hline[layout.lines[l].fixed_index] = l;
    }

    const auto ts0 = std::chrono::steady_clock::now();
    const std::vector<double> w_global = weight_values(m, g);

    const int n_sub = layout.subdomain_count();
    std::vector<std::vector<double>> vals_xi(n_sub), vals_eta(n_sub);
    std::vector<std::string> warn_xi(n_sub), warn_eta(n_sub);

    parallel_for(static_cast<std::size_t>(n_sub), threads, [&](std::size_t s) {
        const int a = static_cast<int>(s) % layout.n_sub_x;
        const int b = static_cast<int>(s) / layout.n_sub_x;
        const Subdomain sub = layout.subdomain(a, b);

        std::vector<double> w(static_cast<std::size_t>(sub.nx) * sub.ny);
        for (int j = 0; j < sub.ny; ++j)
            for (int i = 0; i < sub.nx; ++i)
                w[static_cast<std::size_t>(j) * sub.nx + i] =
                    w_global[g.idx(sub.i0 + i, sub.j0 + j)];

        const auto edge_values = [&](bool for_xi, Edge e) -> std::vector<double> {
            const bool horizontal = (e == Edge::bottom || e == Edge::top);
            const int len = horizontal ? sub.nx : sub.ny;
            const int lo = horizontal ? sub.i0 : sub.j0;
            switch (e) {
                case Edge::bottom:
                    if (sub.j0 == 0)
                        return slice_edge_table(for_xi ? bd.f.bottom : bd.g.bottom, lo, len);
                    return slice_line(for_xi ? ifc.xi[hline.at(sub.j0)]
                                             : ifc.eta[hline.at(sub.j0)],
                                      lo, len);
                case Edge::top: {
                    const int j1 = sub.j0 + sub.ny - 1;
                    if (j1 == g.ny - 1)
                        return slice_edge_table(for_xi ? bd.f.top : bd.g.top, lo, len);
                    return slice_line(for_xi ? ifc.xi[hline.at(j1)] : ifc.eta[hline.at(j1)],
                                      lo, len);
                }
                case Edge::left:
                    if (sub.i0 == 0)
                        return slice_edge_table(for_xi ? bd.f.left : bd.g.left, lo, len);
                    return slice_line(for_xi ? ifc.xi[vline.at(sub.i0)]
                                             : ifc.eta[vline.at(sub.i0)],
                                      lo, len);
                case Edge::right: {
                    const int i1 = sub.i0 + sub.nx - 1;
                    if (i1 == g.nx - 1)
                        return slice_edge_table(for_xi ? bd.f.right : bd.g.right, lo, len);
                    return slice_line(for_xi ? ifc.xi[vline.at(i1)] : ifc.eta[vline.at(i1)],
                                      lo, len);
                }
            }
            return {};
        };

        EdgeData bc_xi{edge_values(true, Edge::bottom), edge_values(true, Edge::top),
                       edge_values(true, Edge::left), edge_values(true, Edge::right)};
        EdgeData bc_eta{edge_values(false, Edge::bottom), edge_values(false, Edge::top),
                        edge_values(false, Edge::left), edge_values(false, Edge::right)};

        SolveResult rx = solve_dirichlet(w, sub.nx, sub.ny, g.hx(), g.hy(), bc_xi, scfg);
        SolveResult re = solve_dirichlet(w, sub.nx, sub.ny, g.hx(), g.hy(), bc_eta, scfg);
        vals_xi[s] = std::move(rx.field.values);
        vals_eta[s] = std::move(re.field.values);
        warn_xi[s] = std::move(rx.warning);
        warn_eta[s] = std::move(re.warning);
    });

    SddResult out{MeshSolution(ScalarField(g), ScalarField(g)), 0.0, 0.0, 0.0, 0, 0, 0, {}};
    for (int s = 0; s < n_sub; ++s) {
        const int a = s % layout.n_sub_x;
        const int b = s / layout.n_sub_x;
        const Subdomain sub = layout.subdomain(a, b);
        for (int j = 0; j < sub.ny; ++j) {
            for (int i = 0; i < sub.nx; ++i) {
                const std::size_t gi = g.idx(sub.i0 + i, sub.j0 + j);
                const std::size_t li = static_cast<std::size_t>(j) * sub.nx + i;
                out.sol.xi.values[gi] = vals_xi[s][li];
                out.sol.eta.values[gi] = vals_eta[s][li];
            }
        }
        out.subdomain_solves += 2;
        if (!warn_xi[s].empty())
            out.warnings.push_back("subdomain (" + std::to_string(a) + "," +
                                   std::to_string(b) + ") xi: " + warn_xi[s]);
        if (!warn_eta[s].empty())
            out.warnings.push_back("subdomain (" + std::to_string(a) + "," +
                                   std::to_string(b) + ") eta: " + warn_eta[s]);
    }
    out.t_sub = t_bd + seconds_since(ts0);
    out.t_stoc = t_stoc;
    out.t_smooth = t_smooth;
    out.mc_points = ifc.mc_points;
    out.restarts = ifc.restarts;
    for (auto& wmsg : ifc.warnings) out.warnings.push_back(wmsg);
    return out;
}

}  // namespace sdd
