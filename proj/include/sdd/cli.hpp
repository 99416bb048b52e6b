#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace sdd {

struct TimingReport {
    double t_stoc = 0.0, t_sub = 0.0, t_smooth = 0.0, t_total = 0.0;
    std::optional<double> t_1;        // sequential whole-domain solve time
    std::optional<double> speedup;    // modeled S_p
};

// Modeled speedup of p processors when k interface points per line on
// (n_x + n_y) interior interfaces cost t_mc seconds each against a t_1-second
// sequential solve: p / (1 + k (n_x + n_y) t_mc / t_1).
double speedup_model(int p, double k, int n_x, int n_y, double t_mc, double t_1);

struct RunConfig {
    enum class Command { single, stochastic_full, sdd, quality, bench };
    Command command = Command::single;

    std::string monitor = "running";
    std::optional<double> monitor_R, monitor_alpha;
    std::optional<std::array<double, 4>> domain;  // xmin xmax ymin ymax

    int nx = 29, ny = 29;
    int sub_x = 2, sub_y = 2;

    std::string scheme = "exponential:1000";        // linear:<dt> | exponential:<lambda>
    long walks = 10000;
    std::string placement = "all";                  // all | equispaced:<k> | optimal
    std::optional<std::uint64_t> seed;
    long max_steps = 10'000'000;

    double tol = 1e-8;
    long max_iters = 0;

    int smooth_steps = 0;
    double smooth_k = 1000.0;
    double smooth_dt = 1e-4;
    std::string smooth_scope = "global";            // global | subdomain
    bool interface_smooth = false;
    int interface_span = 5;

    std::string reference;    // "" | "single" | mesh file path
    int threads = 0;          // 0: hardware concurrency

    std::string out_mesh, out_csv, out_svg, out_timing_csv;
    std::string in_mesh;      // quality command input
};

// Executes the configured pipeline and writes the requested artifacts.
// Throws ValidationError for bad configurations and Error subclasses for
// runtime failures; returns 0 on success.
int run(const RunConfig& cfg);

}  // namespace sdd
