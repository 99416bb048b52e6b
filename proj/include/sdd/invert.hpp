#pragma once

#include "sdd/field.hpp"

namespace sdd {

// Inverts the computational-coordinate solution to the physical mesh: every
// physical grid cell's (xi, eta) image is split into two triangles along the
// lower-left diagonal, each uniform target (xi_a, eta_b) is point-located in
// that tessellation, and the physical coordinates are interpolated
// barycentrically. Point location walks from the previously found triangle
// and falls back to an exhaustive scan, so locally folded (noisy) fields are
// still inverted as long as some triangle covers the target.
PhysicalMesh invert_mesh(const MeshSolution& sol, int m_xi, int m_eta, int threads = 1);

}  // namespace sdd
