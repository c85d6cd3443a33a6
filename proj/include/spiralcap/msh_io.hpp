#pragma once

#include <iosfwd>
#include <string>

#include "spiralcap/mesh.hpp"

namespace spiralcap {

/// Parse an MSH 2.2 ASCII stream. Consumes $MeshFormat/$Nodes/$Elements;
/// 3-node triangles (type 2) become region-tagged triangles, 2-node lines
/// (type 1) become boundary edges, every other element type is ignored and
/// unknown sections are skipped. Nodes must lie in the z = 0 plane.
/// Throws ParseError (with line number) on malformed input.
Mesh2D import_msh(std::istream& in);
Mesh2D import_msh_file(const std::string& path);

/// Write the same MSH 2.2 ASCII subset. Coordinates are printed with 17
/// significant digits so a round-trip reproduces them bit-exactly. The
/// optional comment is stored in a $SpiralcapConfig section that import
/// (and Gmsh) skip.
void export_msh(const Mesh2D& mesh, std::ostream& out,
                const std::string& comment = {});
void export_msh_file(const Mesh2D& mesh, const std::string& path,
                     const std::string& comment = {});

}  // namespace spiralcap
