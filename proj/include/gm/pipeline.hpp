#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gm/metrics.hpp"
#include "gm/random_models.hpp"

namespace gm {

inline constexpr const char* kVersion = "graphmetrics 0.1.0";

/// Batch experiment configuration. Loaded from JSON; every CLI flag overrides
/// the corresponding key. All outputs are reproducible from (config, seed).
struct ExperimentConfig {
    std::string collection = "point"; // point | interval | custom
    std::string grid = "desk100";     // desk100 | paper500
    std::optional<Vertex> n;          // vertex-count override
    std::optional<int> per_param;     // point collections
    std::optional<int> per_model;     // interval collections
    std::filesystem::path custom_manifest; // collection == custom
    std::filesystem::path custom_edges;    // optional edge-list dir for custom

    std::vector<std::string> metrics = {"dbeta", "ddelta", "pd",
                                        "triadeuclid", "triademd", "random"};
    int p = 6;
    double eps = std::numeric_limits<double>::infinity(); // primary Betti budget
    std::vector<double> eps_variants;                     // extra dbeta rows

    int perms = 1500;
    double alpha = 0.05;
    int knn_k = 3;

    std::uint64_t seed = 7;
    int workers = 1;
    std::filesystem::path out = "out";
};

ExperimentConfig config_from_json(const std::string& text);
/// With include_execution = false, the `workers` and `out` keys are omitted:
/// they describe how and where a run executes, not what it computes, and the
/// echoed config inside an output tree must not vary with them.
std::string config_to_json(const ExperimentConfig& cfg, bool include_execution = true);

PointGrid resolve_point_grid(const ExperimentConfig& cfg);
IntervalGrid resolve_interval_grid(const ExperimentConfig& cfg);

/// Builds (or loads, for custom collections) the manifest described by the
/// config; does not touch the filesystem.
CollectionManifest build_manifest(const ExperimentConfig& cfg);

/// Graph loader honoring a custom edge-list directory when set; otherwise
/// regenerates graphs from their manifest seeds.
GraphLoader make_loader(const ExperimentConfig& cfg);

// Pipeline stages; each writes deterministic artifacts under cfg.out.
CollectionManifest stage_generate(const ExperimentConfig& cfg);
std::vector<GraphArtifacts> stage_artifacts(const ExperimentConfig& cfg,
                                            const CollectionManifest& manifest);
std::vector<DistanceMatrix> stage_distances(const ExperimentConfig& cfg,
                                            const CollectionManifest& manifest,
                                            const std::vector<GraphArtifacts>& arts);
void stage_compare(const ExperimentConfig& cfg, const CollectionManifest& manifest,
                   const std::vector<DistanceMatrix>& mats);
void stage_permtest(const ExperimentConfig& cfg, const CollectionManifest& manifest,
                    const std::vector<DistanceMatrix>& mats);
void stage_knn(const ExperimentConfig& cfg, const CollectionManifest& manifest,
               const std::vector<DistanceMatrix>& mats,
               const std::vector<GraphArtifacts>& arts);

/// Runs every stage in order and writes a run log; byte-identical across
/// invocations with the same config and seed, at any worker count.
void run_pipeline(const ExperimentConfig& cfg);

// Extra per-graph emissions for the `features` subcommand.
std::string graphlets_to_json(const std::string& id, const GraphArtifacts& art);
std::string portrait_to_json(const std::string& id, const Portrait& B);

} // namespace gm
