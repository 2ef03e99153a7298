#include "gm/distance_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gm/io.hpp"

namespace gm {

DistanceMatrix DistanceMatrix::scaled(double c) const {
    DistanceMatrix out = *this;
    for (double& x : out.d) x *= c;
    return out;
}

DistanceMatrix DistanceMatrix::slice(const std::vector<std::size_t>& idx) const {
    DistanceMatrix out;
    out.metric = metric;
    out.p = p;
    out.eps = eps;
    out.seed = seed;
    for (std::size_t i : idx) out.labels.push_back(labels.at(i));
    out.d.resize(idx.size() * idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            out.d[a * idx.size() + b] = at(idx[a], idx[b]);
    return out;
}

void DistanceMatrix::validate() const {
    const std::size_t n = size();
    if (d.size() != n * n) throw SizeMismatchError("distance matrix storage mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) != 0.0) throw GraphError("nonzero diagonal in distance matrix");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (at(i, j) != at(j, i)) throw GraphError("asymmetric distance matrix");
            if (!(at(i, j) >= 0.0)) throw GraphError("negative distance");
        }
    }
}

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string distance_matrix_to_csv(const DistanceMatrix& m) {
    std::ostringstream out;
    out << "# metric: " << m.metric << "\n";
    if (m.p >= 0) out << "# p: " << m.p << "\n";
    if (!std::isinf(m.eps)) out << "# eps: " << fmt17(m.eps) << "\n";
    if (m.seed != 0) out << "# seed: " << m.seed << "\n";
    out << "id";
    for (const auto& l : m.labels) out << "," << l;
    out << "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.labels[i];
        for (std::size_t j = 0; j < m.size(); ++j) out << "," << fmt17(m.at(i, j));
        out << "\n";
    }
    return out.str();
}

DistanceMatrix distance_matrix_from_csv(const std::string& text) {
    DistanceMatrix m;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            std::string key = line.substr(1, colon - 1);
            std::string value = line.substr(colon + 1);
            const auto strip = [](std::string& s) {
                const auto a = s.find_first_not_of(" \t");
                const auto b = s.find_last_not_of(" \t\r");
                s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
            };
            strip(key);
            strip(value);
            if (key == "metric") m.metric = value;
            else if (key == "p") m.p = std::stoi(value);
            else if (key == "eps") m.eps = std::stod(value);
            else if (key == "seed") m.seed = std::stoull(value);
            continue;
        }
        std::istringstream cells(line);
        std::string cell;
        if (!have_header) {
            std::getline(cells, cell, ','); // "id"
            while (std::getline(cells, cell, ',')) m.labels.push_back(cell);
            m.d.assign(m.labels.size() * m.labels.size(), 0.0);
            have_header = true;
            continue;
        }
        if (row >= m.size()) throw IoError("distance matrix csv has too many rows");
        std::getline(cells, cell, ','); // label column
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (!std::getline(cells, cell, ',')) throw IoError("distance matrix csv: short row");
            m.at(row, j) = std::stod(cell);
        }
        ++row;
    }
    if (!have_header || row != m.size()) throw IoError("distance matrix csv: truncated");
    return m;
}

void write_distance_matrix(const DistanceMatrix& m, const std::filesystem::path& path) {
    atomic_write(path, distance_matrix_to_csv(m));
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
    return distance_matrix_from_csv(slurp(path));
}

} // namespace gm
