#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdd/field.hpp"

namespace sdd {

struct SubdomainLayout;

enum class SmoothScope { global, per_subdomain };

struct SmoothConfig {
    double k = 1000.0;  // edge-stopping parameter in c = exp(-|grad|^2 / k^2)
    double dt = 1e-4;
    int steps = 5;
    SmoothScope scope = SmoothScope::global;

    void validate() const;
};

// Returns a warning if dt exceeds the FTCS stability bound hx*hy/4 (c <= 1).
std::optional<std::string> stability_warning(const SmoothConfig& cfg, const GridSpec& spec);

// Edge-preserving diffusion u_t = div(c grad u), c = exp(-|grad u|^2 / k^2),
// applied to xi and eta independently with an FTCS sweep per step. Dirichlet
// nodes are held fixed: the physical boundary for global scope; additionally
// every interface line for per-subdomain scope, where each subdomain block is
// smoothed on its own. Gradients use centered differences where possible and
// one-sided differences on the block edges; half-point conductivities are
// arithmetic means of the nodal values.
MeshSolution perona_malik(const MeshSolution& sol, const SmoothConfig& cfg,
                          const SubdomainLayout* layout = nullptr);

// Locally weighted quadratic regression along a uniformly spaced line:
// degree-2 weighted least squares over a `span`-node window with tricube
// weights, evaluated at the window's center node. The two endpoints keep
// their values. Linear in the input.
std::vector<double> smooth_interface(const std::vector<double>& values, int span);

}  // namespace sdd
