#include "spiralcap/output.hpp"

#include <cstdio>
#include <ostream>

namespace spiralcap {

std::string fmt12(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return buf;
}

void write_vtk(std::ostream& out, const Mesh2D& mesh,
               const std::vector<double>& potential,
               const std::vector<double>& energy_density,
               const std::string& title) {
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.nodes.size() << " double\n";
    for (const Vec2& p : mesh.nodes)
        out << fmt12(p.x) << ' ' << fmt12(p.y) << " 0\n";

    const std::size_t m = mesh.triangles.size();
    out << "CELLS " << m << ' ' << 4 * m << "\n";
    for (const Triangle& t : mesh.triangles)
        out << "3 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << "\n";
    out << "CELL_TYPES " << m << "\n";
    for (std::size_t i = 0; i < m; ++i) out << "5\n";

    out << "CELL_DATA " << m << "\n";
    out << "SCALARS region int 1\nLOOKUP_TABLE default\n";
    for (const Triangle& t : mesh.triangles) out << t.region << "\n";

    out << "POINT_DATA " << mesh.nodes.size() << "\n";
    out << "SCALARS potential double 1\nLOOKUP_TABLE default\n";
    for (double u : potential) out << fmt12(u) << "\n";
    if (!energy_density.empty()) {
        out << "SCALARS energy_density double 1\nLOOKUP_TABLE default\n";
        for (double e : energy_density) out << fmt12(e) << "\n";
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& hash, const std::string& config_line) {
    out << "# spiralcap sweep, config " << hash << "\n";
    out << "# " << config_line << "\n";
    out << "nu_loops_per_radius,c_total,c_in,sensitivity,error\n";
    for (const SweepRow& row : rows) {
        if (row.ok) {
            out << fmt12(row.nu) << ',' << fmt12(row.c_total) << ',' << fmt12(row.c_in)
                << ',' << fmt12(row.sensitivity) << ",\n";
        } else {
            std::string msg = row.error;
            for (char& c : msg)
                if (c == ',' || c == '\n') c = ';';
            out << fmt12(row.nu) << ",,,," << msg << "\n";
        }
    }
}

void write_profile_csv(std::ostream& out,
                       const std::vector<std::pair<double, double>>& samples,
                       const std::string& hash, const std::string& config_line) {
    out << "# spiralcap potential profile along the Y axis, config " << hash << "\n";
    out << "# " << config_line << "\n";
    out << "y,u\n";
    for (const auto& [y, u] : samples)
        out << fmt12(y) << ',' << fmt12(u) << "\n";
}

}  // namespace spiralcap
