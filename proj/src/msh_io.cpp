#include "spiralcap/msh_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "spiralcap/errors.hpp"

namespace spiralcap {

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    }

    std::string require(const std::string& what) {
        std::string line;
        if (!next(line)) throw ParseError("unexpected end of file, expected " + what, line_no);
        return line;
    }
};

}  // namespace

Mesh2D import_msh(std::istream& in) {
    LineReader reader{in};
    Mesh2D mesh;
    std::unordered_map<long, int> id_to_index;
    bool seen_format = false;
    bool seen_nodes = false;

    std::string line;
    while (reader.next(line)) {
        if (line.empty() || line[0] != '$')
            throw ParseError("expected a section header, got '" + line + "'", reader.line_no);
        const std::string section = line.substr(1);

        if (section == "MeshFormat") {
            std::istringstream fmt(reader.require("format line"));
            std::string version;
            int file_type = -1, data_size = -1;
            if (!(fmt >> version >> file_type >> data_size))
                throw ParseError("malformed $MeshFormat line", reader.line_no);
            if (version != "2.2")
                throw ParseError("unsupported MSH version '" + version + "', need 2.2",
                                 reader.line_no);
            if (file_type != 0)
                throw ParseError("only ASCII MSH files are supported", reader.line_no);
            if (reader.require("$EndMeshFormat") != "$EndMeshFormat")
                throw ParseError("missing $EndMeshFormat", reader.line_no);
            seen_format = true;
        } else if (section == "Nodes") {
            if (!seen_format)
                throw ParseError("$Nodes before $MeshFormat", reader.line_no);
            long count = 0;
            {
                std::istringstream head(reader.require("node count"));
                if (!(head >> count) || count < 0)
                    throw ParseError("malformed node count", reader.line_no);
            }
            mesh.nodes.reserve(count);
            for (long i = 0; i < count; ++i) {
                std::istringstream ns(reader.require("node record"));
                long id;
                double x, y, z;
                if (!(ns >> id >> x >> y >> z))
                    throw ParseError("malformed node record", reader.line_no);
                if (std::abs(z) > 1e-9)
                    throw ParseError("node is not in the z = 0 plane", reader.line_no);
                if (!id_to_index.emplace(id, static_cast<int>(mesh.nodes.size())).second)
                    throw ParseError("duplicate node id " + std::to_string(id), reader.line_no);
                mesh.nodes.push_back({x, y});
            }
            if (reader.require("$EndNodes") != "$EndNodes")
                throw ParseError("missing $EndNodes", reader.line_no);
            seen_nodes = true;
        } else if (section == "Elements") {
            if (!seen_nodes)
                throw ParseError("$Elements before $Nodes", reader.line_no);
            long count = 0;
            {
                std::istringstream head(reader.require("element count"));
                if (!(head >> count) || count < 0)
                    throw ParseError("malformed element count", reader.line_no);
            }
            const auto resolve = [&](long id) {
                const auto it = id_to_index.find(id);
                if (it == id_to_index.end())
                    throw ParseError("element references missing node " + std::to_string(id),
                                     reader.line_no);
                return it->second;
            };
            for (long i = 0; i < count; ++i) {
                std::istringstream es(reader.require("element record"));
                long id;
                int type = 0, ntags = 0;
                if (!(es >> id >> type >> ntags) || ntags < 0)
                    throw ParseError("malformed element record", reader.line_no);
                std::vector<long> tags(ntags);
                for (int t = 0; t < ntags; ++t)
                    if (!(es >> tags[t]))
                        throw ParseError("malformed element tags", reader.line_no);
                if (type == 2) {
                    long a, b, c;
                    if (!(es >> a >> b >> c))
                        throw ParseError("malformed triangle connectivity", reader.line_no);
                    if (ntags < 1)
                        throw ParseError("triangle without a physical tag", reader.line_no);
                    mesh.triangles.push_back(
                        {{resolve(a), resolve(b), resolve(c)}, static_cast<int>(tags[0])});
                } else if (type == 1) {
                    long a, b;
                    if (!(es >> a >> b))
                        throw ParseError("malformed line connectivity", reader.line_no);
                    mesh.boundary_edges.push_back({resolve(a), resolve(b)});
                }
                // all other element types are ignored
            }
            if (reader.require("$EndElements") != "$EndElements")
                throw ParseError("missing $EndElements", reader.line_no);
        } else {
            // unknown section: skip to its end marker
            const std::string terminator = "$End" + section;
            std::string skipped;
            while (true) {
                if (!reader.next(skipped))
                    throw ParseError("unterminated section $" + section, reader.line_no);
                if (skipped == terminator) break;
            }
        }
    }

    if (!seen_format) throw ParseError("no $MeshFormat section found", reader.line_no);
    if (!seen_nodes) throw ParseError("no $Nodes section found", reader.line_no);
    return mesh;
}

Mesh2D import_msh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return import_msh(in);
}

void export_msh(const Mesh2D& mesh, std::ostream& out, const std::string& comment) {
    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
    if (!comment.empty())
        out << "$SpiralcapConfig\n" << comment << "\n$EndSpiralcapConfig\n";

    char buf[64];
    out << "$Nodes\n" << mesh.nodes.size() << "\n";
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        out << (i + 1) << ' ';
        std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", mesh.nodes[i].x, mesh.nodes[i].y);
        out << buf;
    }
    out << "$EndNodes\n";

    out << "$Elements\n" << (mesh.boundary_edges.size() + mesh.triangles.size()) << "\n";
    long id = 1;
    for (const auto& e : mesh.boundary_edges)
        out << id++ << " 1 2 1 1 " << (e[0] + 1) << ' ' << (e[1] + 1) << "\n";
    for (const auto& t : mesh.triangles)
        out << id++ << " 2 2 " << t.region << ' ' << t.region << ' ' << (t.v[0] + 1)
            << ' ' << (t.v[1] + 1) << ' ' << (t.v[2] + 1) << "\n";
    out << "$EndElements\n";
}

void export_msh_file(const Mesh2D& mesh, const std::string& path,
                     const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
    export_msh(mesh, out, comment);
}

}  // namespace spiralcap
