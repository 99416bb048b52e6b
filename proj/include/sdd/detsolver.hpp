#pragma once

#include <string>
#include <vector>

#include "sdd/field.hpp"
#include "sdd/monitor.hpp"

namespace sdd {

struct SolverConfig {
    double tol = 1e-8;
    long max_iters = 0;   // 0: defaults to 200 * max(nx, ny)^2
    bool init_blend = true;  // false: start from the boundary-range midpoint

    void validate() const;
    long effective_max_iters(int nx, int ny) const;
};

// Dirichlet values along the four grid edges; sizes nx, nx, ny, ny.
struct EdgeData {
    std::vector<double> bottom, top, left, right;
};

// 1D equidistribution along one edge: solution of (w u')' = 0, u=0..1 with
// w = 1/rho restricted to the edge, i.e. u(s) = int_0^s rho / int_0^1 rho,
// by trapezoidal quadrature on the n edge nodes. Monotone from 0 to 1.
std::vector<double> solve_1d_boundary(const MonitorFunction& m, const GridSpec& spec,
                                      Edge edge);

struct SolveResult {
    ScalarField field;
    long iterations = 0;
    double final_update = 0.0;
    bool converged = false;
    std::string warning;  // non-empty if max_iters hit before tol
};

// Jacobi fixed point of the conservative five-point stencil
//   (w_{i+1/2,j}(u_{i+1,j}-u_{i,j}) - w_{i-1/2,j}(u_{i,j}-u_{i-1,j}))/hx^2 + (y term) = 0
// with half-point weights by arithmetic mean of the nodal w values. The nodal
// weights are passed explicitly so that subdomain solves can share the exact
// global node evaluations.
SolveResult solve_dirichlet(const std::vector<double>& w, int nx, int ny, double hx,
                            double hy, const EdgeData& bc, const SolverConfig& cfg);

// Convenience overload: w = 1/rho evaluated at the grid nodes.
SolveResult solve_dirichlet(const MonitorFunction& m, const GridSpec& spec,
                            const EdgeData& bc, const SolverConfig& cfg);

std::vector<double> weight_values(const MonitorFunction& m, const GridSpec& spec);

struct MeshSolveResult {
    MeshSolution sol;
    long iterations_xi = 0, iterations_eta = 0;
    bool converged = true;
    std::vector<std::string> warnings;
};

// Whole-domain solve with the standard boundary conditions: xi is 0/1 on the
// left/right edges and the 1D equidistribution values along bottom/top; eta
// symmetrically in y.
MeshSolveResult solve_single_domain(const MonitorFunction& m, const GridSpec& spec,
                                    const SolverConfig& cfg);

}  // namespace sdd
