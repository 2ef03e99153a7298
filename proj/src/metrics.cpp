#include "gm/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "gm/io.hpp"
#include "gm/parallel.hpp"
#include "gm/rng.hpp"

namespace gm {

namespace fs = std::filesystem;

std::string metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::DBeta: return "dbeta";
        case MetricKind::DDelta: return "ddelta";
        case MetricKind::TriadEuclid: return "triadeuclid";
        case MetricKind::TriadEMD: return "triademd";
        case MetricKind::PortraitDiv: return "pd";
        case MetricKind::ParamDist: return "dparam";
        case MetricKind::RandomControl: return "random";
    }
    return "?";
}

MetricKind metric_from_name(const std::string& name) {
    if (name == "dbeta") return MetricKind::DBeta;
    if (name == "ddelta") return MetricKind::DDelta;
    if (name == "triadeuclid") return MetricKind::TriadEuclid;
    if (name == "triademd") return MetricKind::TriadEMD;
    if (name == "pd") return MetricKind::PortraitDiv;
    if (name == "dparam") return MetricKind::ParamDist;
    if (name == "random") return MetricKind::RandomControl;
    throw BadConfigError("unknown metric: " + name);
}

namespace {

std::string eps_tag(double eps) {
    if (std::isinf(eps)) return "exact";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

fs::path cache_path(const fs::path& dir, const std::string& id, int p, double eps) {
    return dir / (id + ".p" + std::to_string(p) + ".eps" + eps_tag(eps) + ".json");
}

} // namespace

GraphArtifacts compute_artifacts(const ManifestEntry& entry, const ArtifactOptions& opts,
                                 const GraphLoader& load) {
    GraphArtifacts art;
    art.id = entry.id;

    std::optional<DirectedGraph> graph;
    auto the_graph = [&]() -> const DirectedGraph& {
        if (!graph) graph = load(entry);
        return *graph;
    };

    if (opts.topology) {
        bool cached = false;
        if (!opts.cache_dir.empty()) {
            const auto path = cache_path(opts.cache_dir, entry.id, opts.p, opts.eps);
            if (fs::exists(path)) {
                art.features = features_from_json(slurp(path));
                cached = true;
            }
        }
        if (!cached) {
            art.features = compute_features(the_graph(), opts.p, opts.eps);
            if (!opts.cache_dir.empty()) {
                fs::create_directories(opts.cache_dir);
                atomic_write(cache_path(opts.cache_dir, entry.id, opts.p, opts.eps),
                             features_to_json(entry.id, *art.features));
            }
        }
    }
    if (opts.graphlets) {
        art.census = triad_census(the_graph());
        art.phi = triad_profile(*art.census);
        std::vector<std::vector<double>> dists;
        for (auto& deg : orbit_degrees_all(the_graph()))
            dists.push_back(orbit_degree_distribution(deg));
        art.orbit_dists = std::move(dists);
    }
    if (opts.portrait) art.portrait = portrait_distribution(portrait(the_graph()));
    return art;
}

std::vector<GraphArtifacts> collection_artifacts(const CollectionManifest& manifest,
                                                 const ArtifactOptions& opts,
                                                 const GraphLoader& load, int workers) {
    std::vector<GraphArtifacts> arts(manifest.entries.size());
    parallel_for(manifest.entries.size(), workers, [&](std::size_t i) {
        arts[i] = compute_artifacts(manifest.entries[i], opts, load);
    });
    return arts;
}

namespace {

std::vector<std::string> labels_of(const std::vector<GraphArtifacts>& arts) {
    std::vector<std::string> ids;
    ids.reserve(arts.size());
    for (const auto& a : arts) ids.push_back(a.id);
    return ids;
}

double l2(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw SizeMismatchError("feature vectors differ in length");
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

template <class Get>
DistanceMatrix pairwise(const std::vector<GraphArtifacts>& arts, const std::string& name,
                        Get&& dist) {
    DistanceMatrix m(labels_of(arts));
    m.metric = name;
    for (std::size_t i = 0; i < arts.size(); ++i)
        for (std::size_t j = i + 1; j < arts.size(); ++j) m.set(i, j, dist(arts[i], arts[j]));
    return m;
}

const GraphFeatures& need_features(const GraphArtifacts& a) {
    if (!a.features) throw MissingGraphError("artifacts lack topology features: " + a.id);
    return *a.features;
}

} // namespace

DistanceMatrix dbeta_matrix(const std::vector<GraphArtifacts>& arts) {
    auto m = pairwise(arts, "dbeta", [](const GraphArtifacts& x, const GraphArtifacts& y) {
        return l2(need_features(x).b, need_features(y).b);
    });
    if (!arts.empty()) {
        m.p = need_features(arts[0]).p;
        m.eps = need_features(arts[0]).eps;
    }
    return m;
}

DistanceMatrix ddelta_matrix(const std::vector<GraphArtifacts>& arts) {
    auto m = pairwise(arts, "ddelta", [](const GraphArtifacts& x, const GraphArtifacts& y) {
        return l2(need_features(x).c, need_features(y).c);
    });
    if (!arts.empty()) m.p = need_features(arts[0]).p;
    return m;
}

DistanceMatrix triad_euclid_matrix(const std::vector<GraphArtifacts>& arts) {
    return pairwise(arts, "triadeuclid", [](const GraphArtifacts& x, const GraphArtifacts& y) {
        if (!x.phi || !y.phi) throw MissingGraphError("artifacts lack triad profiles");
        double sum = 0;
        for (int i = 0; i < TriadCatalog::kClasses; ++i) {
            const double d = (*x.phi)[i] - (*y.phi)[i];
            sum += d * d;
        }
        return std::sqrt(sum);
    });
}

DistanceMatrix triad_emd_matrix(const std::vector<GraphArtifacts>& arts) {
    return pairwise(arts, "triademd", [](const GraphArtifacts& x, const GraphArtifacts& y) {
        if (!x.orbit_dists || !y.orbit_dists)
            throw MissingGraphError("artifacts lack orbit-degree distributions");
        return triad_emd_from_distributions(*x.orbit_dists, *y.orbit_dists);
    });
}

DistanceMatrix portrait_divergence_matrix(const std::vector<GraphArtifacts>& arts) {
    return pairwise(arts, "pd", [](const GraphArtifacts& x, const GraphArtifacts& y) {
        if (!x.portrait || !y.portrait) throw MissingGraphError("artifacts lack portraits");
        return js_divergence(*x.portrait, *y.portrait);
    });
}

double parameter_distance(const CollectionManifest& manifest, std::size_t i, std::size_t j) {
    const auto& a = manifest.entries.at(i).params;
    const auto& b = manifest.entries.at(j).params;
    if (a.model != b.model)
        throw ModelMismatchError("parameter distance undefined across models");
    return std::abs(a.param - b.param);
}

DistanceMatrix parameter_matrix(const CollectionManifest& manifest) {
    for (const auto& e : manifest.entries)
        if (e.params.model != manifest.entries[0].params.model)
            throw MetricUnavailableError("dparam requested across different models");
    DistanceMatrix m;
    for (const auto& e : manifest.entries) m.labels.push_back(e.id);
    m.d.assign(m.size() * m.size(), 0.0);
    m.metric = "dparam";
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) m.set(i, j, parameter_distance(manifest, i, j));
    return m;
}

DistanceMatrix random_control(const std::vector<std::string>& labels, std::uint64_t seed) {
    DistanceMatrix m(labels);
    m.metric = "random";
    m.seed = seed;
    Rng rng(seed);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) m.set(i, j, rng.unit());
    return m;
}

DistanceMatrix random_control(std::size_t n, std::uint64_t seed) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    return random_control(labels, seed);
}

DistanceMatrix distance_matrix(const CollectionManifest& manifest, const MetricSpec& spec,
                               const GraphLoader& load, const fs::path& cache_dir, int workers) {
    if (spec.kind == MetricKind::ParamDist) return parameter_matrix(manifest);
    if (spec.kind == MetricKind::RandomControl) {
        std::vector<std::string> labels;
        for (const auto& e : manifest.entries) labels.push_back(e.id);
        return random_control(labels, spec.seed);
    }
    ArtifactOptions opts;
    opts.p = spec.p;
    opts.eps = spec.eps;
    opts.cache_dir = cache_dir;
    opts.topology = spec.kind == MetricKind::DBeta || spec.kind == MetricKind::DDelta;
    opts.graphlets = spec.kind == MetricKind::TriadEuclid || spec.kind == MetricKind::TriadEMD;
    opts.portrait = spec.kind == MetricKind::PortraitDiv;
    const auto arts = collection_artifacts(manifest, opts, load, workers);
    switch (spec.kind) {
        case MetricKind::DBeta: return dbeta_matrix(arts);
        case MetricKind::DDelta: return ddelta_matrix(arts);
        case MetricKind::TriadEuclid: return triad_euclid_matrix(arts);
        case MetricKind::TriadEMD: return triad_emd_matrix(arts);
        case MetricKind::PortraitDiv: return portrait_divergence_matrix(arts);
        default: break;
    }
    throw BadConfigError("unhandled metric kind");
}

} // namespace gm
