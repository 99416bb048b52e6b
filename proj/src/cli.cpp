#include "sdd/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sdd/decomposition.hpp"
#include "sdd/invert.hpp"
#include "sdd/mesh_io.hpp"
#include "sdd/parallel.hpp"
#include "sdd/quality.hpp"
#include "sdd/smoothing.hpp"

namespace sdd {

double speedup_model(int p, double k, int n_x, int n_y, double t_mc, double t_1) {
    if (p < 1 || k < 0 || n_x < 0 || n_y < 0 || t_mc < 0 || !(t_1 > 0)) {
        throw ValidationError("speedup_model: arguments must be positive");
    }
    return p / (1.0 + k * (n_x + n_y) * t_mc / t_1);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct SchemeSpec {
    SchemeKind kind;
    double value;
};

SchemeSpec parse_scheme(const std::string& s) {
    const auto colon = s.find(':');
    const std::string name = s.substr(0, colon);
    double value = 0.0;
    if (colon != std::string::npos) {
        try {
            value = std::stod(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw ValidationError("bad scheme parameter in '" + s + "'");
        }
    }
    if (name == "linear") {
        if (colon == std::string::npos) throw ValidationError("linear scheme needs :<dt>");
        return {SchemeKind::linear, value};
    }
    if (name == "exponential") {
        if (colon == std::string::npos)
            throw ValidationError("exponential scheme needs :<lambda>");
        return {SchemeKind::exponential, value};
    }
    throw ValidationError("unknown scheme '" + s + "' (linear:<dt> | exponential:<lambda>)");
}

struct PlacementSpec {
    PlacementStrategy strategy;
    int k;
};

PlacementSpec parse_placement(const std::string& s) {
    if (s == "all") return {PlacementStrategy::all, 0};
    if (s == "optimal") return {PlacementStrategy::optimal, 0};
    const std::string prefix = "equispaced:";
    if (s.rfind(prefix, 0) == 0) {
        try {
            return {PlacementStrategy::equispaced, std::stoi(s.substr(prefix.size()))};
        } catch (const std::exception&) {
            throw ValidationError("bad equispaced count in '" + s + "'");
        }
    }
    throw ValidationError("unknown placement '" + s +
                          "' (all | equispaced:<k> | optimal)");
}

MonitorFunction build_monitor(const RunConfig& cfg) {
    std::optional<RectDomain> dom;
    if (cfg.domain) {
        dom = RectDomain((*cfg.domain)[0], (*cfg.domain)[1], (*cfg.domain)[2],
                         (*cfg.domain)[3]);
    }
    return MonitorFunction::by_name(cfg.monitor, cfg.monitor_R, cfg.monitor_alpha, dom);
}

WalkConfig build_walk_config(const RunConfig& cfg) {
    if (!cfg.seed) {
        throw ValidationError("this command runs Monte Carlo walks; --seed is required");
    }
    const SchemeSpec s = parse_scheme(cfg.scheme);
    WalkConfig w;
    w.scheme = s.kind;
    if (s.kind == SchemeKind::linear) w.dt = s.value;
    else w.lambda = s.value;
    w.walks = cfg.walks;
    w.seed = *cfg.seed;
    w.max_steps = cfg.max_steps;
    w.validate();
    return w;
}

SmoothConfig build_smooth_config(const RunConfig& cfg) {
    SmoothConfig s;
    s.k = cfg.smooth_k;
    s.dt = cfg.smooth_dt;
    s.steps = cfg.smooth_steps;
    if (cfg.smooth_scope == "global") s.scope = SmoothScope::global;
    else if (cfg.smooth_scope == "subdomain") s.scope = SmoothScope::per_subdomain;
    else throw ValidationError("smooth scope must be 'global' or 'subdomain'");
    s.validate();
    return s;
}

void write_quality_csv(const std::string& path, const RunConfig& cfg,
                       const QualityReport& q, bool stochastic) {
    std::ostringstream os;
    os << "n,lambda,dt,l_inf,q_max,q_mean,r_max,r_mean\n";
    if (stochastic) {
        const SchemeSpec s = parse_scheme(cfg.scheme);
        os << cfg.walks << ",";
        os << (s.kind == SchemeKind::exponential ? fmt(s.value) : "") << ",";
        os << (s.kind == SchemeKind::linear ? fmt(s.value) : "") << ",";
    } else {
        os << ",,,";
    }
    os << (q.l_inf ? fmt(*q.l_inf) : "") << "," << fmt(q.q_max) << "," << fmt(q.q_mean)
       << "," << (q.r_max ? fmt(*q.r_max) : "") << ","
       << (q.r_mean ? fmt(*q.r_mean) : "") << "\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    out << os.str();
}

void write_timing_csv(const std::string& path, const RunConfig& cfg, long mc_points,
                      const TimingReport& t) {
    std::ostringstream os;
    os << "grid,subdomains,walks,scheme,placement,mc_points,t_stoc,t_sub,t_smooth,"
          "t_total,t_1,speedup_model\n";
    os << cfg.nx << "x" << cfg.ny << "," << cfg.sub_x << "x" << cfg.sub_y << ","
       << cfg.walks << "," << cfg.scheme << "," << cfg.placement << "," << mc_points
       << "," << fmt(t.t_stoc) << "," << fmt(t.t_sub) << "," << fmt(t.t_smooth) << ","
       << fmt(t.t_total) << "," << (t.t_1 ? fmt(*t.t_1) : "") << ","
       << (t.speedup ? fmt(*t.speedup) : "") << "\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    out << os.str();
}

void emit_artifacts(const RunConfig& cfg, const PhysicalMesh& mesh,
                    const MeshSolution& sol) {
    if (!cfg.out_mesh.empty()) write_mesh(mesh, sol, cfg.out_mesh);
    if (!cfg.out_svg.empty()) render_svg(mesh, cfg.out_svg);
}

void print_quality(const QualityReport& q) {
    std::cout << "q_max=" << fmt(q.q_max) << " q_mean=" << fmt(q.q_mean);
    if (q.r_max) std::cout << " r_max=" << fmt(*q.r_max);
    if (q.r_mean) std::cout << " r_mean=" << fmt(*q.r_mean);
    if (q.l_inf) std::cout << " l_inf=" << fmt(*q.l_inf);
    std::cout << "\n";
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Deterministic reference mesh: single-domain solve, smoothed globally with
// the run's smoothing settings so quality ratios compare like with like.
struct Reference {
    PhysicalMesh mesh;
    MeshSolution sol;
    double t_solve;
};

Reference make_reference_single(const MonitorFunction& m, const GridSpec& spec,
                                const SolverConfig& scfg, const RunConfig& cfg,
                                int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    MeshSolveResult r = solve_single_domain(m, spec, scfg);
    const double t_solve = seconds_since(t0);
    print_warnings(r.warnings);
    MeshSolution sol = std::move(r.sol);
    if (cfg.smooth_steps > 0) {
        SmoothConfig sm = build_smooth_config(cfg);
        sm.scope = SmoothScope::global;
        sol = perona_malik(sol, sm);
    }
    PhysicalMesh mesh = invert_mesh(sol, spec.nx, spec.ny, threads);
    return Reference{std::move(mesh), std::move(sol), t_solve};
}

std::optional<PhysicalMesh> load_or_make_reference(const RunConfig& cfg,
                                                   const MonitorFunction& m,
                                                   const GridSpec& spec,
                                                   const SolverConfig& scfg,
                                                   int threads) {
    if (cfg.reference.empty()) return std::nullopt;
    if (cfg.reference == "single") {
        return make_reference_single(m, spec, scfg, cfg, threads).mesh;
    }
    return read_mesh(cfg.reference).mesh;
}

int run_single(const RunConfig& cfg, const MonitorFunction& m, const GridSpec& spec,
               const SolverConfig& scfg, int threads) {
    MeshSolveResult r = solve_single_domain(m, spec, scfg);
    print_warnings(r.warnings);
    MeshSolution sol = std::move(r.sol);
    if (cfg.smooth_steps > 0) {
        SmoothConfig sm = build_smooth_config(cfg);
        if (sm.scope != SmoothScope::global) {
            throw ValidationError("single command supports global smoothing only");
        }
        if (auto w = stability_warning(sm, spec)) std::cerr << "warning: " << *w << "\n";
        sol = perona_malik(sol, sm);
    }
    const PhysicalMesh mesh = invert_mesh(sol, spec.nx, spec.ny, threads);
    const QualityReport q = quality_report(mesh);
    std::cout << "single: grid=" << spec.nx << "x" << spec.ny << " monitor=" << cfg.monitor
              << " iters=(" << r.iterations_xi << "," << r.iterations_eta << ")\n";
    print_quality(q);
    emit_artifacts(cfg, mesh, sol);
    if (!cfg.out_csv.empty()) write_quality_csv(cfg.out_csv, cfg, q, false);
    return 0;
}

int run_stochastic_full(const RunConfig& cfg, const MonitorFunction& m,
                        const GridSpec& spec, const SolverConfig& scfg, int threads) {
    const WalkConfig wcfg = build_walk_config(cfg);
    const BoundaryData bd = make_boundary_data(m, spec);

    MeshSolution sol{ScalarField(spec), ScalarField(spec)};
    for (int i = 0; i < spec.nx; ++i) {
        sol.xi.at(i, 0) = bd.f.bottom[i];
        sol.xi.at(i, spec.ny - 1) = bd.f.top[i];
        sol.eta.at(i, 0) = bd.g.bottom[i];
        sol.eta.at(i, spec.ny - 1) = bd.g.top[i];
    }
    for (int j = 0; j < spec.ny; ++j) {
        sol.xi.at(0, j) = bd.f.left[j];
        sol.xi.at(spec.nx - 1, j) = bd.f.right[j];
        sol.eta.at(0, j) = bd.g.left[j];
        sol.eta.at(spec.nx - 1, j) = bd.g.right[j];
    }

    const long interior = static_cast<long>(spec.nx - 2) * (spec.ny - 2);
    long restarts = 0;
    std::vector<McEstimate> est(static_cast<std::size_t>(interior));
    parallel_for(static_cast<std::size_t>(interior), threads, [&](std::size_t n) {
        const int i = 1 + static_cast<int>(n) % (spec.nx - 2);
        const int j = 1 + static_cast<int>(n) / (spec.nx - 2);
        est[n] = mc_estimate(spec.node(i, j), spec.idx(i, j), m, spec.domain, bd, wcfg, 1);
    });
    for (std::size_t n = 0; n < est.size(); ++n) {
        const int i = 1 + static_cast<int>(n) % (spec.nx - 2);
        const int j = 1 + static_cast<int>(n) / (spec.nx - 2);
        sol.xi.at(i, j) = est[n].xi;
        sol.eta.at(i, j) = est[n].eta;
        restarts += est[n].restarts;
    }
    if (restarts > interior * cfg.walks / 100) {
        std::cerr << "warning: restart fraction above 1%\n";
    }

    if (cfg.smooth_steps > 0) {
        SmoothConfig sm = build_smooth_config(cfg);
        if (sm.scope != SmoothScope::global) {
            throw ValidationError("stochastic-full supports global smoothing only");
        }
        if (auto w = stability_warning(sm, spec)) std::cerr << "warning: " << *w << "\n";
        sol = perona_malik(sol, sm);
    }

    const PhysicalMesh mesh = invert_mesh(sol, spec.nx, spec.ny, threads);
    const auto ref = load_or_make_reference(cfg, m, spec, scfg, threads);
    const QualityReport q = quality_report(mesh, ref ? &*ref : nullptr, &m);
    std::cout << "stochastic-full: grid=" << spec.nx << "x" << spec.ny
              << " walks=" << cfg.walks << " scheme=" << cfg.scheme << "\n";
    print_quality(q);
    emit_artifacts(cfg, mesh, sol);
    if (!cfg.out_csv.empty()) write_quality_csv(cfg.out_csv, cfg, q, true);
    return 0;
}

int run_sdd_like(const RunConfig& cfg, const MonitorFunction& m, const GridSpec& spec,
                 const SolverConfig& scfg, int threads, bool bench) {
    const WalkConfig wcfg = build_walk_config(cfg);
    const PlacementSpec pl = parse_placement(cfg.placement);
    const SubdomainLayout layout = build_layout(spec, cfg.sub_x, cfg.sub_y);
    const InterfacePlan plan =
        plan_interface_points(pl.strategy, pl.k, m, layout);

    SddOptions opts;
    opts.smooth_interface = cfg.interface_smooth;
    opts.smooth_span = cfg.interface_span;

    SddResult r = solve_sdd(m, layout, plan, wcfg, scfg, opts, threads);
    print_warnings(r.warnings);

    TimingReport timing;
    timing.t_stoc = r.t_stoc;
    timing.t_sub = r.t_sub;
    timing.t_smooth = r.t_smooth;

    MeshSolution sol = std::move(r.sol);
    if (cfg.smooth_steps > 0) {
        const SmoothConfig sm = build_smooth_config(cfg);
        if (auto w = stability_warning(sm, spec)) std::cerr << "warning: " << *w << "\n";
        const auto ts = std::chrono::steady_clock::now();
        sol = perona_malik(sol, sm, &layout);
        timing.t_smooth += seconds_since(ts);
    }
    timing.t_total = timing.t_stoc + timing.t_sub + timing.t_smooth;

    const PhysicalMesh mesh = invert_mesh(sol, spec.nx, spec.ny, threads);

    std::optional<PhysicalMesh> ref;
    if (bench) {
        // Sequential whole-domain reference: both the quality baseline and t_1.
        RunConfig ref_cfg = cfg;
        Reference r1 = make_reference_single(m, spec, scfg, ref_cfg, 1);
        timing.t_1 = r1.t_solve;
        const int lines = static_cast<int>(layout.lines.size());
        const double k_per_line =
            lines > 0 ? static_cast<double>(r.mc_points) / lines : 0.0;
        const double t_mc = r.mc_points > 0 ? timing.t_stoc / r.mc_points : 0.0;
        timing.speedup = speedup_model(layout.subdomain_count(), k_per_line,
                                       cfg.sub_x - 1, cfg.sub_y - 1, t_mc, *timing.t_1);
        ref = std::move(r1.mesh);
    } else {
        ref = load_or_make_reference(cfg, m, spec, scfg, threads);
    }

    const QualityReport q = quality_report(mesh, ref ? &*ref : nullptr, &m);
    std::cout << (bench ? "bench" : "sdd") << ": grid=" << spec.nx << "x" << spec.ny
              << " subdomains=" << cfg.sub_x << "x" << cfg.sub_y
              << " walks=" << cfg.walks << " placement=" << cfg.placement
              << " mc_points=" << r.mc_points << "\n";
    print_quality(q);
    std::cout << "t_stoc=" << fmt(timing.t_stoc) << " t_sub=" << fmt(timing.t_sub)
              << " t_smooth=" << fmt(timing.t_smooth) << " t_total=" << fmt(timing.t_total);
    if (timing.t_1) std::cout << " t_1=" << fmt(*timing.t_1);
    if (timing.speedup) std::cout << " speedup_model=" << fmt(*timing.speedup);
    std::cout << "\n";

    emit_artifacts(cfg, mesh, sol);
    if (!cfg.out_csv.empty()) write_quality_csv(cfg.out_csv, cfg, q, true);
    if (!cfg.out_timing_csv.empty())
        write_timing_csv(cfg.out_timing_csv, cfg, r.mc_points, timing);
    return 0;
}

int run_quality(const RunConfig& cfg) {
    if (cfg.in_mesh.empty()) {
        throw ValidationError("quality command needs --mesh <file>");
    }
    const MeshFile mesh = read_mesh(cfg.in_mesh);
    std::optional<MeshFile> ref;
    if (!cfg.reference.empty()) {
        if (cfg.reference == "single") {
            throw ValidationError("quality command compares files; --reference "
                                  "needs a mesh file path");
        }
        ref = read_mesh(cfg.reference);
    }
    std::optional<MonitorFunction> mon;
    if (ref && !cfg.monitor.empty()) {
        std::optional<RectDomain> dom;
        if (cfg.domain) {
            dom = RectDomain((*cfg.domain)[0], (*cfg.domain)[1], (*cfg.domain)[2],
                             (*cfg.domain)[3]);
        }
        mon = MonitorFunction::by_name(cfg.monitor, cfg.monitor_R, cfg.monitor_alpha, dom);
    }
    const QualityReport q = quality_report(mesh.mesh, ref ? &ref->mesh : nullptr,
                                           mon ? &*mon : nullptr);
    print_quality(q);
    if (!cfg.out_csv.empty()) write_quality_csv(cfg.out_csv, cfg, q, false);
    return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
    const int threads = cfg.threads > 0 ? cfg.threads : hardware_threads();
    if (cfg.command == RunConfig::Command::quality) return run_quality(cfg);

    const MonitorFunction m = build_monitor(cfg);
    const GridSpec spec(m.domain(), cfg.nx, cfg.ny);
    SolverConfig scfg;
    scfg.tol = cfg.tol;
    scfg.max_iters = cfg.max_iters;
    scfg.validate();

    switch (cfg.command) {
        case RunConfig::Command::single:
            return run_single(cfg, m, spec, scfg, threads);
        case RunConfig::Command::stochastic_full:
            return run_stochastic_full(cfg, m, spec, scfg, threads);
        case RunConfig::Command::sdd:
            return run_sdd_like(cfg, m, spec, scfg, threads, false);
        case RunConfig::Command::bench:
            return run_sdd_like(cfg, m, spec, scfg, threads, true);
        case RunConfig::Command::quality:
            break;
    }
    return 0;
}

}  // namespace sdd
