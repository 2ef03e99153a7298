#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "gm/errors.hpp"

namespace gm {

/// Symmetric nonnegative matrix with zero diagonal over a labeled collection,
/// plus provenance of how it was computed.
struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<double> d; // row-major, size n*n
    std::string metric;
    int p = -1;                                           // homology dim, when relevant
    double eps = std::numeric_limits<double>::infinity(); // betti budget, when relevant
    std::uint64_t seed = 0;                               // random control only

    DistanceMatrix() = default;
    explicit DistanceMatrix(std::vector<std::string> ids)
        : labels(std::move(ids)), d(labels.size() * labels.size(), 0.0) {}

    std::size_t size() const { return labels.size(); }
    double& at(std::size_t i, std::size_t j) { return d[i * size() + j]; }
    double at(std::size_t i, std::size_t j) const { return d[i * size() + j]; }

    void set(std::size_t i, std::size_t j, double value) {
        at(i, j) = value;
        at(j, i) = value;
    }

    DistanceMatrix scaled(double c) const;
    DistanceMatrix slice(const std::vector<std::size_t>& idx) const;

    /// Throws unless symmetric with zero diagonal and nonnegative entries.
    void validate() const;
};

/// CSV with `# key: value` provenance comment lines, then a header row of ids
/// and one row per graph.
std::string distance_matrix_to_csv(const DistanceMatrix& m);
DistanceMatrix distance_matrix_from_csv(const std::string& text);

void write_distance_matrix(const DistanceMatrix& m, const std::filesystem::path& path);
DistanceMatrix read_distance_matrix(const std::filesystem::path& path);

} // namespace gm
