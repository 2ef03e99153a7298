#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>

#include "gm/distance_matrix.hpp"
#include "gm/features.hpp"
#include "gm/graphlets.hpp"
#include "gm/portrait.hpp"
#include "gm/random_models.hpp"

namespace gm {

enum class MetricKind {
    DBeta,        // L2 on log-clamped Betti vectors
    DDelta,       // L2 on log-clamped simplex-count vectors
    TriadEuclid,  // L2 on triad profiles
    TriadEMD,     // mean EMD over orbit-degree distributions
    PortraitDiv,  // Jensen-Shannon divergence of portrait distributions
    ParamDist,    // |param_i - param_j|, same-model collections only
    RandomControl // symmetric uniform(0,1) null baseline
};

std::string metric_name(MetricKind kind);
MetricKind metric_from_name(const std::string& name);

struct MetricSpec {
    MetricKind kind = MetricKind::DBeta;
    int p = 6;
    double eps = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0; // random control only
};

/// Everything pairwise metrics need from a single graph, computed once.
struct GraphArtifacts {
    std::string id;
    std::optional<GraphFeatures> features;
    std::optional<TriadCensus> census;
    std::optional<std::array<double, TriadCatalog::kClasses>> phi;
    std::optional<std::vector<std::vector<double>>> orbit_dists;
    std::optional<PortraitDistribution> portrait;
};

struct ArtifactOptions {
    int p = 6;
    double eps = std::numeric_limits<double>::infinity();
    bool topology = true;
    bool graphlets = true;
    bool portrait = true;
    // Feature cache directory; homology features are stored per
    // (graph id, p, eps) and reused across runs. Empty = no cache.
    std::filesystem::path cache_dir;
};

using GraphLoader = std::function<DirectedGraph(const ManifestEntry&)>;

GraphArtifacts compute_artifacts(const ManifestEntry& entry, const ArtifactOptions& opts,
                                 const GraphLoader& load = materialize);

/// Artifacts for a whole collection; graphs are materialized in parallel with
/// per-entry results merged in manifest order.
std::vector<GraphArtifacts> collection_artifacts(const CollectionManifest& manifest,
                                                 const ArtifactOptions& opts,
                                                 const GraphLoader& load = materialize,
                                                 int workers = 1);

DistanceMatrix dbeta_matrix(const std::vector<GraphArtifacts>& arts);
DistanceMatrix ddelta_matrix(const std::vector<GraphArtifacts>& arts);
DistanceMatrix triad_euclid_matrix(const std::vector<GraphArtifacts>& arts);
DistanceMatrix triad_emd_matrix(const std::vector<GraphArtifacts>& arts);
DistanceMatrix portrait_divergence_matrix(const std::vector<GraphArtifacts>& arts);

/// |param_i - param_j|; ModelMismatch unless both graphs share a model.
double parameter_distance(const CollectionManifest& manifest, std::size_t i, std::size_t j);

/// MetricUnavailable when the manifest mixes models.
DistanceMatrix parameter_matrix(const CollectionManifest& manifest);

/// Symmetric matrix with zero diagonal and i.i.d. uniform(0,1) off-diagonal
/// entries; the independence null baseline.
DistanceMatrix random_control(const std::vector<std::string>& labels, std::uint64_t seed);
DistanceMatrix random_control(std::size_t n, std::uint64_t seed);

/// One-shot assembly for a single metric.
DistanceMatrix distance_matrix(const CollectionManifest& manifest, const MetricSpec& spec,
                               const GraphLoader& load = materialize,
                               const std::filesystem::path& cache_dir = {}, int workers = 1);

} // namespace gm
