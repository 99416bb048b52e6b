#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdd/boundary.hpp"
#include "sdd/detsolver.hpp"
#include "sdd/sde.hpp"

namespace sdd {

// One dividing grid line of the decomposition, spanning the whole domain.
struct InterfaceLine {
    bool vertical;     // true: constant-x line, nodes run along j
    int fixed_index;   // global i (vertical) or j (horizontal)
    double fixed_coord;
    int length;        // node count along the line
};

struct Subdomain {
    int i0, j0;   // global node offset of the block
    int nx, ny;   // node counts including the shared interface nodes
};

struct SubdomainLayout {
    GridSpec global;
    int n_sub_x, n_sub_y;
    int block_x, block_y;  // (nx-1)/n_sub_x, (ny-1)/n_sub_y
    std::vector<InterfaceLine> lines;

    Subdomain subdomain(int a, int b) const;
    int subdomain_count() const { return n_sub_x * n_sub_y; }
};

// Partition of the grid into n_sub_x x n_sub_y blocks sharing interface grid
// lines. Requires (nx-1) and (ny-1) divisible by the subdomain counts.
SubdomainLayout build_layout(const GridSpec& spec, int n_sub_x, int n_sub_y);

enum class PlacementStrategy { all, equispaced, optimal };

struct InterfacePlan {
    PlacementStrategy strategy = PlacementStrategy::all;
    int k = 0;                                    // equispaced interior count
    std::vector<std::vector<int>> stochastic;     // per line: sorted interior indices
};

// all: every interior line node. equispaced(k): k uniformly indexed interior
// nodes. optimal: nodes at strict discrete extrema of the monitor's first and
// second derivative along each line (rho_x, rho_xx on horizontal lines;
// rho_y, rho_yy on vertical ones), deduplicated within two grid cells, with a
// line-midpoint fallback. Line endpoints are never planned; they carry the
// known boundary values.
InterfacePlan plan_interface_points(PlacementStrategy strategy, int k,
                                    const MonitorFunction& m,
                                    const SubdomainLayout& layout);

struct InterfaceSolution {
    std::vector<std::vector<double>> xi, eta;       // per line, full node range
    std::vector<std::vector<double>> se_xi, se_eta; // stderr; 0 at non-MC nodes
    long mc_points = 0;
    long restarts = 0;
    std::vector<std::string> warnings;
};

// Monte Carlo estimates at every planned node (one estimate per unique global
// node; both xi and eta come from the same walks), then piecewise-linear fill
// of the remaining nodes between known values (MC nodes, endpoint anchors,
// and line crossings known from the other line).
InterfaceSolution solve_interfaces(const InterfacePlan& plan, const MonitorFunction& m,
                                   const BoundaryData& bd, const WalkConfig& wcfg,
                                   const SubdomainLayout& layout, int threads = 1);

struct SddOptions {
    bool smooth_interface = false;
    int smooth_span = 5;
};

struct SddResult {
    MeshSolution sol;
    double t_stoc = 0.0, t_sub = 0.0, t_smooth = 0.0;  // seconds
    long mc_points = 0;
    long subdomain_solves = 0;  // deterministic solves run (xi and eta each count 1)
    long restarts = 0;
    std::vector<std::string> warnings;
};

// Non-iterative stochastic domain decomposition: boundary data, interface
// solve, optional interface pre-smoothing, then one independent deterministic
// solve per subdomain per field, assembled into the global solution.
SddResult solve_sdd(const MonitorFunction& m, const SubdomainLayout& layout,
                    const InterfacePlan& plan, const WalkConfig& wcfg,
                    const SolverConfig& scfg, const SddOptions& opts = {},
                    int threads = 1);

}  // namespace sdd
