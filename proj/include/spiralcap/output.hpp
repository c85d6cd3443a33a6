#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spiralcap/capacitor.hpp"
#include "spiralcap/mesh.hpp"

namespace spiralcap {

/// Fixed 12-significant-digit scientific formatting; the CSV and report
/// writers use it so identical runs emit byte-identical files.
std::string fmt12(double value);

/// Legacy ASCII UNSTRUCTURED_GRID with the potential (and optionally the
/// projected energy density) as POINT_DATA scalars and the region tags as
/// CELL_DATA. The title line carries the config hash; VTK has no room for
/// the full config, which lives in the JSON report written alongside.
void write_vtk(std::ostream& out, const Mesh2D& mesh,
               const std::vector<double>& potential,
               const std::vector<double>& energy_density,
               const std::string& title);

/// CSV with '#' comment header (config hash + full effective config),
/// '.' decimal separator and ',' field separator.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& hash, const std::string& config_line);

void write_profile_csv(std::ostream& out,
                       const std::vector<std::pair<double, double>>& samples,
                       const std::string& hash, const std::string& config_line);

}  // namespace spiralcap
