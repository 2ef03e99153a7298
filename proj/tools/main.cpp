// Command-line driver: generate graph collections, extract features, build
// pseudometric distance matrices and run the comparison statistics, either
// step by step or as one `pipeline` run.

#include <cstdio>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "gm/io.hpp"
#include "gm/parallel.hpp"
#include "gm/pipeline.hpp"
#include "gm/rng.hpp"
#include "gm/stats.hpp"

namespace fs = std::filesystem;
using namespace gm;

namespace {

// flags shared by most subcommands, applied over an ExperimentConfig
struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> n;
    std::optional<int> p;
    std::optional<double> eps;
    std::optional<int> perms;
    std::optional<double> alpha;
    std::optional<int> knn_k;
    std::optional<int> workers;
    std::optional<std::string> out;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", seed, "global seed");
        cmd->add_option("--n", n, "vertex count override");
        cmd->add_option("--p", p, "max homology dimension");
        cmd->add_option("--eps", eps, "Betti reduction budget (omit for exact)");
        cmd->add_option("--perms", perms, "permutation count");
        cmd->add_option("--alpha", alpha, "significance level");
        cmd->add_option("--knn-k", knn_k, "k for k-NN");
        cmd->add_option("--workers", workers, "worker threads");
        cmd->add_option("--out", out, "output directory");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = config_from_json(slurp(config_path));
        if (seed) cfg.seed = *seed;
        if (n) cfg.n = Vertex(*n);
        if (p) cfg.p = *p;
        if (eps) cfg.eps = *eps;
        if (perms) cfg.perms = *perms;
        if (alpha) cfg.alpha = *alpha;
        if (knn_k) cfg.knn_k = *knn_k;
        if (workers) cfg.workers = *workers;
        if (out) cfg.out = *out;
        return cfg;
    }
};

CollectionManifest load_manifest(const std::string& path) {
    return manifest_from_json(slurp(path));
}

GraphLoader edge_dir_loader(const fs::path& dir) {
    return [dir](const ManifestEntry& e) { return read_edge_list(dir / (e.id + ".txt")); };
}

int cmd_generate(const CommonFlags& common, const std::string& kind, const std::string& grid,
                 std::optional<int> per_param, std::optional<int> per_model) {
    ExperimentConfig cfg = common.resolve();
    if (!kind.empty()) cfg.collection = kind;
    if (!grid.empty()) cfg.grid = grid;
    if (per_param) cfg.per_param = per_param;
    if (per_model) cfg.per_model = per_model;
    const auto manifest = stage_generate(cfg);
    std::printf("wrote %zu graphs under %s\n", manifest.entries.size(), cfg.out.string().c_str());
    return 0;
}

int cmd_features(const CommonFlags& common, const std::string& manifest_path,
                 const std::string& edges_dir, bool graphlets, bool portrait_flag) {
    ExperimentConfig cfg = common.resolve();
    const auto manifest = !manifest_path.empty()
                              ? load_manifest(manifest_path)
                              : manifest_from_json(slurp(cfg.out / "manifest.json"));
    GraphLoader load = edges_dir.empty() ? make_loader(cfg) : edge_dir_loader(edges_dir);

    ArtifactOptions opts;
    opts.p = cfg.p;
    opts.eps = cfg.eps;
    opts.graphlets = graphlets;
    opts.portrait = false; // the portrait JSON needs the raw matrix, see below
    opts.cache_dir = cfg.out / "features";
    fs::create_directories(opts.cache_dir);

    parallel_for(manifest.entries.size(), cfg.workers, [&](std::size_t i) {
        const auto& e = manifest.entries[i];
        const auto art = compute_artifacts(e, opts, load);
        if (graphlets)
            atomic_write(opts.cache_dir / (e.id + ".graphlets.json"),
                         graphlets_to_json(e.id, art));
        if (portrait_flag)
            atomic_write(opts.cache_dir / (e.id + ".portrait.json"),
                         portrait_to_json(e.id, portrait(load(e))));
    });
    std::printf("features for %zu graphs under %s\n", manifest.entries.size(),
                opts.cache_dir.string().c_str());
    return 0;
}

int cmd_dist(const CommonFlags& common, const std::string& manifest_path,
             const std::string& edges_dir, const std::string& metric) {
    ExperimentConfig cfg = common.resolve();
    const auto manifest = !manifest_path.empty()
                              ? load_manifest(manifest_path)
                              : manifest_from_json(slurp(cfg.out / "manifest.json"));
    GraphLoader load = edges_dir.empty() ? make_loader(cfg) : edge_dir_loader(edges_dir);

    MetricSpec spec;
    spec.kind = metric_from_name(metric);
    spec.p = cfg.p;
    spec.eps = cfg.eps;
    spec.seed = derive_seed(cfg.seed, fnv1a64("random-control"));
    const auto m = distance_matrix(manifest, spec, load, cfg.out / "features", cfg.workers);
    fs::create_directories(cfg.out / "dist");
    const auto path = cfg.out / "dist" / (m.metric + ".csv");
    write_distance_matrix(m, path);
    std::printf("wrote %s (%zu x %zu)\n", path.string().c_str(), m.size(), m.size());
    return 0;
}

DistanceMatrix load_matrix(const ExperimentConfig& cfg, const std::string& name_or_path) {
    const fs::path direct(name_or_path);
    if (fs::exists(direct)) return read_distance_matrix(direct);
    const fs::path under_out = cfg.out / "dist" / (name_or_path + ".csv");
    if (fs::exists(under_out)) return read_distance_matrix(under_out);
    throw IoError("no distance matrix found for: " + name_or_path);
}

int cmd_compare(const CommonFlags& common, const std::string& row, const std::string& col) {
    ExperimentConfig cfg = common.resolve();
    const auto rm = load_matrix(cfg, row);
    const auto cm = load_matrix(cfg, col);
    std::printf("row,col,fm,dcor\n%s,%s,%.10g,%.10g\n", rm.metric.c_str(), cm.metric.c_str(),
                fm_compare(rm, cm), dcor(rm, cm));
    return 0;
}

int cmd_permtest(const CommonFlags& common, const std::string& d1, const std::string& d2,
                 const std::string& stat_name) {
    ExperimentConfig cfg = common.resolve();
    const auto m1 = load_matrix(cfg, d1);
    const auto m2 = load_matrix(cfg, d2);
    const TestStat stat = stat_name == "fm" ? TestStat::FM : TestStat::DCor;
    const auto res = permutation_test(m1, m2, stat, cfg.perms,
                                      derive_seed(cfg.seed, fnv1a64("permtest:" + d1 + ":" + d2)));
    std::printf("stat,value,perms,p\n%s,%.10g,%d,%.10g\n", res.stat_name.c_str(), res.statistic,
                res.permutations, res.p_value);
    return 0;
}

int cmd_knn(const CommonFlags& common, const std::string& manifest_path, const std::string& dist,
            const std::string& task, const std::string& labels_kind) {
    ExperimentConfig cfg = common.resolve();
    const auto manifest = !manifest_path.empty()
                              ? load_manifest(manifest_path)
                              : manifest_from_json(slurp(cfg.out / "manifest.json"));
    const auto m = load_matrix(cfg, dist);
    if (m.size() != manifest.entries.size())
        throw SizeMismatchError("distance matrix and manifest differ in size");

    if (task == "classify") {
        std::vector<int> labels;
        if (labels_kind == "param") {
            std::map<double, int> classes;
            for (const auto& e : manifest.entries) classes.emplace(e.params.param, 0);
            int next = 0;
            for (auto& [k, v] : classes) v = next++;
            for (const auto& e : manifest.entries) labels.push_back(classes[e.params.param]);
        } else {
            for (const auto& e : manifest.entries) labels.push_back(int(e.params.model));
        }
        const auto res = knn_classify_loo(m, labels, cfg.knn_k);
        std::printf("task,labels,k,rate\nclassify,%s,%d,%.10g\n", labels_kind.c_str(), cfg.knn_k,
                    res.rate);
    } else {
        std::vector<std::vector<double>> targets;
        for (const auto& e : manifest.entries) targets.push_back({e.params.param});
        const auto res = knn_regress_loo(m, targets, cfg.knn_k);
        std::printf("task,k,mse\nregress,%d,%.10g\n", cfg.knn_k, res.mse);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudometrics on directed graphs and the comparison pipeline"};
    app.require_subcommand(1);

    CommonFlags common;

    auto* generate = app.add_subcommand("generate", "generate a random-graph collection");
    std::string gen_kind, gen_grid;
    std::optional<int> per_param, per_model;
    generate->add_flag_callback("--point", [&] { gen_kind = "point"; },
                                "point-drawn collection");
    generate->add_flag_callback("--interval", [&] { gen_kind = "interval"; },
                                "interval-drawn collection");
    generate->add_option("--grid", gen_grid, "parameter grid: desk100 | paper500");
    generate->add_option("--per-param", per_param, "graphs per parameter (point)");
    generate->add_option("--per-model", per_model, "graphs per model (interval)");
    common.attach(generate);

    auto* features = app.add_subcommand("features", "per-graph topological features");
    std::string manifest_path, edges_dir;
    bool graphlets = false, portrait_flag = false;
    features->add_option("--manifest", manifest_path, "manifest JSON path");
    features->add_option("--edges", edges_dir, "edge-list directory");
    features->add_flag("--graphlets", graphlets, "also emit triad census and orbit degrees");
    features->add_flag("--portrait", portrait_flag, "also emit the network portrait");
    common.attach(features);

    auto* dist = app.add_subcommand("dist", "distance matrix for one pseudometric");
    std::string metric = "dbeta";
    dist->add_option("--manifest", manifest_path, "manifest JSON path");
    dist->add_option("--edges", edges_dir, "edge-list directory");
    dist->add_option("--metric", metric,
                     "dbeta | ddelta | triadeuclid | triademd | pd | dparam | random");
    common.attach(dist);

    auto* compare = app.add_subcommand("compare", "FM index and distance correlation");
    std::string row = "dbeta", col = "ddelta";
    compare->add_option("--row", row, "row metric name or CSV path");
    compare->add_option("--col", col, "column metric name or CSV path");
    common.attach(compare);

    auto* permtest = app.add_subcommand("permtest", "permutation test of independence");
    std::string d1 = "dbeta", d2 = "ddelta", stat = "dcor";
    permtest->add_option("--d1", d1, "first metric name or CSV path");
    permtest->add_option("--d2", d2, "second metric name or CSV path (gets permuted)");
    permtest->add_option("--stat", stat, "dcor | fm");
    common.attach(permtest);

    auto* knn = app.add_subcommand("knn", "leave-one-out k-NN classification/regression");
    std::string task = "classify", labels_kind = "model";
    knn->add_option("--manifest", manifest_path, "manifest JSON path");
    knn->add_option("--dist", d1, "metric name or CSV path");
    knn->add_option("--task", task, "classify | regress");
    knn->add_option("--labels", labels_kind, "model | param (classification)");
    common.attach(knn);

    auto* pipeline = app.add_subcommand("pipeline", "run every stage end to end");
    common.attach(pipeline);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(common, gen_kind, gen_grid, per_param, per_model);
        if (features->parsed()) return cmd_features(common, manifest_path, edges_dir, graphlets, portrait_flag);
        if (dist->parsed()) return cmd_dist(common, manifest_path, edges_dir, metric);
        if (compare->parsed()) return cmd_compare(common, row, col);
        if (permtest->parsed()) return cmd_permtest(common, d1, d2, stat);
        if (knn->parsed()) return cmd_knn(common, manifest_path, d1, task, labels_kind);
        if (pipeline->parsed()) {
            run_pipeline(common.resolve());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
