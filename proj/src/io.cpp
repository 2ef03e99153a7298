#include "gm/io.hpp"

#include <fstream>
#include <sstream>

namespace gm {

namespace fs = std::filesystem;

DirectedGraph read_edge_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path.string());

    std::string line;
    Vertex n = 0;
    bool have_n = false;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream row(line);
        if (!have_n) {
            if (!(row >> n)) throw IoError(path.string() + ": bad vertex count line");
            have_n = true;
            continue;
        }
        long long u, v;
        if (!(row >> u >> v) || u < 0 || v < 0)
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad edge line");
        edges.emplace_back(Vertex(u), Vertex(v));
    }
    if (!have_n) throw IoError(path.string() + ": empty edge-list file");
    return DirectedGraph::from_edge_list(n, edges);
}

void write_edge_list(const DirectedGraph& g, const fs::path& path) {
    std::ostringstream out;
    out << g.num_vertices() << "\n";
    for (const auto& [u, v] : g.edge_list()) out << u << " " << v << "\n";
    atomic_write(path, out.str());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void atomic_write(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write: " + tmp.string());
        out << contents;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace gm
