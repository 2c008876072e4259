#include "robinucq/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace robinucq {

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace

void write_mesh(std::ostream& os, const Mesh& mesh) {
    os << "# robinucq mesh\n";
    os << "nodes " << mesh.node_count() << "\n";
    for (int i = 0; i < mesh.node_count(); ++i)
        os << i << " " << fmt(mesh.nodes[static_cast<size_t>(i)].x) << " "
           << fmt(mesh.nodes[static_cast<size_t>(i)].y) << "\n";
    os << "triangles " << mesh.tri_count() << "\n";
    for (const auto& T : mesh.triangles)
        os << T[0] << " " << T[1] << " " << T[2] << "\n";
    os << "boundary " << mesh.boundary_count() << "\n";
    for (int b = 0; b < mesh.boundary_count(); ++b)
        os << mesh.boundary_nodes[static_cast<size_t>(b)] << " "
           << fmt(mesh.boundary_s[static_cast<size_t>(b)]) << "\n";
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_mesh_file: cannot open " + path);
    write_mesh(os, mesh);
}

Mesh read_mesh(std::istream& is) {
    Mesh mesh;
    std::string line, word;
    enum { None, Nodes, Tris, Bdry } section = None;
    int remaining = 0;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!(ls >> word)) continue;
        if (word == "nodes" || word == "triangles" || word == "boundary") {
            if (!(ls >> remaining)) throw std::runtime_error("read_mesh: missing section count");
            section = word == "nodes" ? Nodes : word == "triangles" ? Tris : Bdry;
            continue;
        }
        if (remaining <= 0) throw std::runtime_error("read_mesh: entry outside a section");
        if (section == Nodes) {
            double x, y;
            if (!(ls >> x >> y)) throw std::runtime_error("read_mesh: malformed node line");
            mesh.nodes.push_back({x, y});
        } else if (section == Tris) {
            int j, k;
            int i = std::stoi(word);
            if (!(ls >> j >> k)) throw std::runtime_error("read_mesh: malformed triangle line");
            mesh.triangles.push_back({i, j, k});
        } else if (section == Bdry) {
            double s;
            int idx = std::stoi(word);
            if (!(ls >> s)) throw std::runtime_error("read_mesh: malformed boundary line");
            mesh.boundary_nodes.push_back(idx);
            mesh.boundary_s.push_back(s);
        }
        --remaining;
    }
    if (mesh.nodes.empty() || mesh.triangles.empty() || mesh.boundary_nodes.empty())
        throw std::runtime_error("read_mesh: incomplete mesh file");

    // the domain polygon is recovered as the chain of boundary nodes
    std::vector<Vec2> poly;
    poly.reserve(mesh.boundary_nodes.size());
    for (int idx : mesh.boundary_nodes) poly.push_back(mesh.nodes[static_cast<size_t>(idx)]);
    mesh.domain = build_polygon(std::move(poly));

    double hmax = 0.0;
    for (const auto& T : mesh.triangles)
        for (int e = 0; e < 3; ++e)
            hmax = std::max(hmax, (mesh.nodes[static_cast<size_t>(T[static_cast<size_t>(e)])] -
                                   mesh.nodes[static_cast<size_t>(T[static_cast<size_t>((e + 1) % 3)])]).norm());
    mesh.h = hmax;
    return mesh;
}

Mesh read_mesh_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_mesh_file: cannot open " + path);
    return read_mesh(is);
}

} // namespace robinucq
