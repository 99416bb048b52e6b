// Command-line front end for the stochastic domain decomposition mesh
// generator: whole-domain solves, fully probabilistic solves, SDD runs,
// quality comparison of mesh files, and a timing benchmark.

#include <array>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdd/cli.hpp"
#include "sdd/errors.hpp"

namespace {

struct GridArg {
    int a = 0, b = 0;
};

bool parse_pair(const std::string& s, GridArg& out) {
    const auto x = s.find('x');
    if (x == std::string::npos) return false;
    try {
        out.a = std::stoi(s.substr(0, x));
        out.b = std::stoi(s.substr(x + 1));
    } catch (const std::exception&) {
        return false;
    }
    return out.a > 0 && out.b > 0;
}

void add_monitor_flags(CLI::App* cmd, sdd::RunConfig& cfg, std::vector<double>& dom) {
    cmd->add_option("--monitor", cfg.monitor,
                    "constant | running | huang-sloan | mackenzie | five-ring")
        ->capture_default_str();
    cmd->add_option("--monitor-R", [&cfg](const std::vector<std::string>& v) {
            cfg.monitor_R = std::stod(v[0]);
            return true;
        },
        "override the monitor's R parameter");
    cmd->add_option("--monitor-alpha", [&cfg](const std::vector<std::string>& v) {
            cfg.monitor_alpha = std::stod(v[0]);
            return true;
        },
        "override the monitor's alpha parameter");
    cmd->add_option("--domain", dom, "xmin xmax ymin ymax (default per monitor)")
        ->expected(4);
}

void add_grid_flags(CLI::App* cmd, sdd::RunConfig& cfg, GridArg& grid) {
    cmd->add_option("--grid", [&grid](const std::vector<std::string>& v) {
            return parse_pair(v[0], grid);
        },
        "grid nodes, e.g. 29x29")
        ->required();
    cmd->add_option("--tol", cfg.tol, "Jacobi stopping tolerance")->capture_default_str();
    cmd->add_option("--max-iters", cfg.max_iters, "Jacobi iteration cap (0 = auto)");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
}

void add_walk_flags(CLI::App* cmd, sdd::RunConfig& cfg, bool seed_required) {
    cmd->add_option("--walks", cfg.walks, "Monte Carlo walks per point")
        ->capture_default_str();
    cmd->add_option("--scheme", cfg.scheme, "linear:<dt> | exponential:<lambda>")
        ->capture_default_str();
    auto* seed = cmd->add_option("--seed", [&cfg](const std::vector<std::string>& v) {
            cfg.seed = static_cast<std::uint64_t>(std::stoull(v[0]));
            return true;
        },
        "RNG seed");
    if (seed_required) seed->required();
    cmd->add_option("--max-steps", cfg.max_steps, "walk step cap before restart");
}

void add_smooth_flags(CLI::App* cmd, sdd::RunConfig& cfg, bool with_scope) {
    cmd->add_option("--smooth-steps", cfg.smooth_steps,
                    "diffusion smoothing steps (0 = off)");
    cmd->add_option("--smooth-k", cfg.smooth_k, "edge-stopping parameter")
        ->capture_default_str();
    cmd->add_option("--smooth-dt", cfg.smooth_dt, "smoothing time step")
        ->capture_default_str();
    if (with_scope) {
        cmd->add_option("--smooth-scope", cfg.smooth_scope, "global | subdomain")
            ->capture_default_str();
    }
}

void add_output_flags(CLI::App* cmd, sdd::RunConfig& cfg) {
    cmd->add_option("--out", cfg.out_mesh, "mesh file to write");
    cmd->add_option("--csv", cfg.out_csv, "quality CSV to write");
    cmd->add_option("--svg", cfg.out_svg, "SVG mesh plot to write");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PDE-based adaptive mesh generation by stochastic domain decomposition"};
    app.require_subcommand(1);

    sdd::RunConfig cfg;
    GridArg grid{29, 29}, subs{2, 2};
    std::vector<double> dom;

    auto* single = app.add_subcommand("single", "deterministic whole-domain solve");
    add_monitor_flags(single, cfg, dom);
    add_grid_flags(single, cfg, grid);
    add_smooth_flags(single, cfg, false);
    add_output_flags(single, cfg);

    auto* full = app.add_subcommand("stochastic-full",
                                    "Monte Carlo solve at every grid point");
    add_monitor_flags(full, cfg, dom);
    add_grid_flags(full, cfg, grid);
    add_walk_flags(full, cfg, true);
    add_smooth_flags(full, cfg, false);
    add_output_flags(full, cfg);
    full->add_option("--reference", cfg.reference,
                     "'single' (solve in-process) or a mesh file, for R ratios");

    auto* sdd_cmd = app.add_subcommand("sdd", "stochastic domain decomposition solve");
    add_monitor_flags(sdd_cmd, cfg, dom);
    add_grid_flags(sdd_cmd, cfg, grid);
    add_walk_flags(sdd_cmd, cfg, true);
    add_smooth_flags(sdd_cmd, cfg, true);
    add_output_flags(sdd_cmd, cfg);
    sdd_cmd->add_option("--subdomains", [&subs](const std::vector<std::string>& v) {
            return parse_pair(v[0], subs);
        },
        "subdomain counts, e.g. 2x2")
        ->required();
    sdd_cmd->add_option("--placement", cfg.placement, "all | equispaced:<k> | optimal")
        ->capture_default_str();
    sdd_cmd->add_flag("--interface-smooth", cfg.interface_smooth,
                      "pre-smooth interface values before the subdomain solves");
    sdd_cmd->add_option("--interface-span", cfg.interface_span,
                        "window size for interface smoothing")
        ->capture_default_str();
    sdd_cmd->add_option("--reference", cfg.reference,
                        "'single' (solve in-process) or a mesh file, for R ratios");
    sdd_cmd->add_option("--timing-csv", cfg.out_timing_csv, "timing CSV to write");

    auto* bench = app.add_subcommand(
        "bench", "SDD run timed against the sequential whole-domain solve");
    add_monitor_flags(bench, cfg, dom);
    add_grid_flags(bench, cfg, grid);
    add_walk_flags(bench, cfg, true);
    add_smooth_flags(bench, cfg, true);
    add_output_flags(bench, cfg);
    bench->add_option("--subdomains", [&subs](const std::vector<std::string>& v) {
            return parse_pair(v[0], subs);
        },
        "subdomain counts, e.g. 4x4")
        ->required();
    bench->add_option("--placement", cfg.placement, "all | equispaced:<k> | optimal")
        ->capture_default_str();
    bench->add_flag("--interface-smooth", cfg.interface_smooth,
                    "pre-smooth interface values before the subdomain solves");
    bench->add_option("--interface-span", cfg.interface_span,
                      "window size for interface smoothing");
    bench->add_option("--timing-csv", cfg.out_timing_csv, "timing CSV to write");

    auto* quality = app.add_subcommand("quality", "quality report for mesh files");
    quality->add_option("--mesh", cfg.in_mesh, "mesh file to evaluate")->required();
    quality->add_option("--reference", cfg.reference, "reference mesh file for R ratios");
    quality->add_option("--monitor", cfg.monitor,
                        "monitor for the l_inf error (needs --reference)");
    quality->add_option("--monitor-R", [&cfg](const std::vector<std::string>& v) {
        cfg.monitor_R = std::stod(v[0]);
        return true;
    });
    quality->add_option("--monitor-alpha", [&cfg](const std::vector<std::string>& v) {
        cfg.monitor_alpha = std::stod(v[0]);
        return true;
    });
    quality->add_option("--csv", cfg.out_csv, "quality CSV to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (single->parsed()) cfg.command = sdd::RunConfig::Command::single;
    else if (full->parsed()) cfg.command = sdd::RunConfig::Command::stochastic_full;
    else if (sdd_cmd->parsed()) cfg.command = sdd::RunConfig::Command::sdd;
    else if (bench->parsed()) cfg.command = sdd::RunConfig::Command::bench;
    else cfg.command = sdd::RunConfig::Command::quality;

    cfg.nx = grid.a;
    cfg.ny = grid.b;
    cfg.sub_x = subs.a;
    cfg.sub_y = subs.b;
    if (dom.size() == 4) cfg.domain = std::array<double, 4>{dom[0], dom[1], dom[2], dom[3]};
    if (quality->parsed() && !quality->count("--monitor")) cfg.monitor.clear();

    try {
        return sdd::run(cfg);
    } catch (const sdd::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
