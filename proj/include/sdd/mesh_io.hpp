#pragma once

#include <string>

#include "sdd/field.hpp"

namespace sdd {

// Text mesh format, bit-exact:
//   line 1:  sddmesh v1 <m_xi> <m_eta>
//   then m_xi * m_eta lines  <a> <b> <x> <y> <xi> <eta>
// with a as the outer (major) index and floats printed with 17 significant
// digits, LF endings. Requires sol's grid shape to equal the mesh shape, so
// each row pairs the inverted node (a,b) with the forward solution at grid
// node (i=a, j=b).
void write_mesh(const PhysicalMesh& mesh, const MeshSolution& sol,
                const std::string& path);

struct MeshFile {
    PhysicalMesh mesh;
    MeshSolution sol;
};

MeshFile read_mesh(const std::string& path);

// One SVG polyline per mesh row and per mesh column, viewBox mapped to the
// physical domain (y flipped to screen coordinates), fixed stroke width.
void render_svg(const PhysicalMesh& mesh, const std::string& path);

}  // namespace sdd
