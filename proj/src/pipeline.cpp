#include "gm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "gm/io.hpp"
#include "gm/parallel.hpp"
#include "gm/rng.hpp"
#include "gm/stats.hpp"
#include "json.hpp"

namespace gm {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string eps_tag(double eps) {
    if (std::isinf(eps)) return "exact";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

} // namespace

ExperimentConfig config_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    if (j.contains("collection")) cfg.collection = j.at("collection").get<std::string>();
    if (j.contains("grid")) cfg.grid = j.at("grid").get<std::string>();
    if (j.contains("n")) cfg.n = j.at("n").get<Vertex>();
    if (j.contains("per_param")) cfg.per_param = j.at("per_param").get<int>();
    if (j.contains("per_model")) cfg.per_model = j.at("per_model").get<int>();
    if (j.contains("custom_manifest"))
        cfg.custom_manifest = j.at("custom_manifest").get<std::string>();
    if (j.contains("custom_edges")) cfg.custom_edges = j.at("custom_edges").get<std::string>();
    if (j.contains("metrics")) cfg.metrics = j.at("metrics").get<std::vector<std::string>>();
    if (j.contains("p")) cfg.p = j.at("p").get<int>();
    if (j.contains("eps") && !j.at("eps").is_null()) cfg.eps = j.at("eps").get<double>();
    if (j.contains("eps_variants"))
        cfg.eps_variants = j.at("eps_variants").get<std::vector<double>>();
    if (j.contains("perms")) cfg.perms = j.at("perms").get<int>();
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("knn_k")) cfg.knn_k = j.at("knn_k").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg, bool include_execution) {
    nlohmann::ordered_json j;
    j["collection"] = cfg.collection;
    j["grid"] = cfg.grid;
    if (cfg.n) j["n"] = *cfg.n;
    if (cfg.per_param) j["per_param"] = *cfg.per_param;
    if (cfg.per_model) j["per_model"] = *cfg.per_model;
    if (!cfg.custom_manifest.empty()) j["custom_manifest"] = cfg.custom_manifest.string();
    if (!cfg.custom_edges.empty()) j["custom_edges"] = cfg.custom_edges.string();
    j["metrics"] = cfg.metrics;
    j["p"] = cfg.p;
    if (std::isinf(cfg.eps)) j["eps"] = nullptr;
    else j["eps"] = cfg.eps;
    j["eps_variants"] = cfg.eps_variants;
    j["perms"] = cfg.perms;
    j["alpha"] = cfg.alpha;
    j["knn_k"] = cfg.knn_k;
    j["seed"] = cfg.seed;
    if (include_execution) {
        j["workers"] = cfg.workers;
        j["out"] = cfg.out.string();
    }
    return j.dump(2) + "\n";
}

PointGrid resolve_point_grid(const ExperimentConfig& cfg) {
    PointGrid grid = cfg.grid == "paper500" ? point_grid_paper() : point_grid_desk100();
    if (cfg.grid != "paper500" && cfg.grid != "desk100")
        throw BadConfigError("unknown grid: " + cfg.grid);
    if (cfg.n) grid.n = *cfg.n;
    if (cfg.per_param) grid.per_param = *cfg.per_param;
    return grid;
}

IntervalGrid resolve_interval_grid(const ExperimentConfig& cfg) {
    IntervalGrid grid = cfg.grid == "paper500" ? interval_grid_paper() : interval_grid_desk100();
    if (cfg.grid != "paper500" && cfg.grid != "desk100")
        throw BadConfigError("unknown grid: " + cfg.grid);
    if (cfg.n) grid.n = *cfg.n;
    if (cfg.per_model) grid.per_model = *cfg.per_model;
    return grid;
}

CollectionManifest build_manifest(const ExperimentConfig& cfg) {
    if (cfg.collection == "point") return gen_point_collection(cfg.seed, resolve_point_grid(cfg));
    if (cfg.collection == "interval")
        return gen_interval_collection(cfg.seed, resolve_interval_grid(cfg));
    if (cfg.collection == "custom") {
        if (cfg.custom_manifest.empty())
            throw BadConfigError("custom collection requires custom_manifest");
        return manifest_from_json(slurp(cfg.custom_manifest));
    }
    throw BadConfigError("unknown collection kind: " + cfg.collection);
}

GraphLoader make_loader(const ExperimentConfig& cfg) {
    if (!cfg.custom_edges.empty()) {
        const fs::path dir = cfg.custom_edges;
        return [dir](const ManifestEntry& e) { return read_edge_list(dir / (e.id + ".txt")); };
    }
    return [](const ManifestEntry& e) { return materialize(e); };
}

CollectionManifest stage_generate(const ExperimentConfig& cfg) {
    const auto manifest = build_manifest(cfg);
    fs::create_directories(cfg.out / "edges");
    atomic_write(cfg.out / "manifest.json", manifest_to_json(manifest));
    const auto load = make_loader(cfg);
    parallel_for(manifest.entries.size(), cfg.workers, [&](std::size_t i) {
        const auto& e = manifest.entries[i];
        write_edge_list(load(e), cfg.out / "edges" / (e.id + ".txt"));
    });
    return manifest;
}

std::vector<GraphArtifacts> stage_artifacts(const ExperimentConfig& cfg,
                                            const CollectionManifest& manifest) {
    ArtifactOptions opts;
    opts.p = cfg.p;
    opts.eps = cfg.eps;
    opts.cache_dir = cfg.out / "features";
    const fs::path edges = cfg.out / "edges";
    GraphLoader load = [edges](const ManifestEntry& e) {
        return read_edge_list(edges / (e.id + ".txt"));
    };
    return collection_artifacts(manifest, opts, load, cfg.workers);
}

std::vector<DistanceMatrix> stage_distances(const ExperimentConfig& cfg,
                                            const CollectionManifest& manifest,
                                            const std::vector<GraphArtifacts>& arts) {
    std::vector<DistanceMatrix> mats;
    bool single_model = true;
    for (const auto& e : manifest.entries)
        if (e.params.model != manifest.entries[0].params.model) single_model = false;

    for (const auto& name : cfg.metrics) {
        const MetricKind kind = metric_from_name(name);
        switch (kind) {
            case MetricKind::DBeta: mats.push_back(dbeta_matrix(arts)); break;
            case MetricKind::DDelta: mats.push_back(ddelta_matrix(arts)); break;
            case MetricKind::TriadEuclid: mats.push_back(triad_euclid_matrix(arts)); break;
            case MetricKind::TriadEMD: mats.push_back(triad_emd_matrix(arts)); break;
            case MetricKind::PortraitDiv: mats.push_back(portrait_divergence_matrix(arts)); break;
            case MetricKind::ParamDist:
                if (!single_model) continue; // only defined within one model
                mats.push_back(parameter_matrix(manifest));
                break;
            case MetricKind::RandomControl: {
                std::vector<std::string> labels;
                for (const auto& e : manifest.entries) labels.push_back(e.id);
                mats.push_back(
                    random_control(labels, derive_seed(cfg.seed, fnv1a64("random-control"))));
                break;
            }
        }
    }

    // approximate-dbeta variants
    if (!cfg.eps_variants.empty()) {
        const fs::path edges = cfg.out / "edges";
        GraphLoader load = [edges](const ManifestEntry& e) {
            return read_edge_list(edges / (e.id + ".txt"));
        };
        for (double eps : cfg.eps_variants) {
            ArtifactOptions opts;
            opts.p = cfg.p;
            opts.eps = eps;
            opts.graphlets = false;
            opts.portrait = false;
            opts.cache_dir = cfg.out / "features";
            auto m = dbeta_matrix(collection_artifacts(manifest, opts, load, cfg.workers));
            m.metric = "dbeta_eps" + eps_tag(eps);
            mats.push_back(std::move(m));
        }
    }

    fs::create_directories(cfg.out / "dist");
    for (const auto& m : mats)
        write_distance_matrix(m, cfg.out / "dist" / (m.metric + ".csv"));
    return mats;
}

namespace {

struct Scope {
    std::string name; // "all", "er", "gr", "pa"
    std::vector<std::size_t> idx;
};

std::vector<Scope> collection_scopes(const CollectionManifest& manifest) {
    std::vector<Scope> scopes;
    Scope all{"all", {}};
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) all.idx.push_back(i);
    for (Model model : {Model::ER, Model::GR, Model::PA}) {
        Scope s;
        s.name = model_name(model);
        std::transform(s.name.begin(), s.name.end(), s.name.begin(), ::tolower);
        for (std::size_t i = 0; i < manifest.entries.size(); ++i)
            if (manifest.entries[i].params.model == model) s.idx.push_back(i);
        if (!s.idx.empty() && s.idx.size() != manifest.entries.size()) scopes.push_back(s);
    }
    scopes.push_back(std::move(all));
    return scopes;
}

CollectionManifest slice_manifest(const CollectionManifest& manifest,
                                  const std::vector<std::size_t>& idx) {
    CollectionManifest out;
    out.kind = manifest.kind;
    out.seed = manifest.seed;
    for (std::size_t i : idx) out.entries.push_back(manifest.entries[i]);
    return out;
}

bool scope_single_model(const CollectionManifest& manifest, const Scope& s) {
    for (std::size_t i : s.idx)
        if (manifest.entries[i].params.model != manifest.entries[s.idx[0]].params.model)
            return false;
    return !s.idx.empty();
}

std::string csv_escape(const std::string& s) { return s; } // labels are plain tokens

std::string table_csv(const std::vector<std::string>& comments,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_escape(header[i]);
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> base_comments(const ExperimentConfig& cfg) {
    return {std::string("version: ") + kVersion, "seed: " + std::to_string(cfg.seed),
            "p: " + std::to_string(cfg.p), "eps: " + eps_tag(cfg.eps)};
}

const DistanceMatrix* find_matrix(const std::vector<DistanceMatrix>& mats,
                                  const std::string& name) {
    for (const auto& m : mats)
        if (m.metric == name) return &m;
    return nullptr;
}

} // namespace

void stage_compare(const ExperimentConfig& cfg, const CollectionManifest& manifest,
                   const std::vector<DistanceMatrix>& mats) {
    const auto* dbeta = find_matrix(mats, "dbeta");
    const auto* ddelta = find_matrix(mats, "ddelta");
    if (!dbeta || !ddelta) return; // comparison columns unavailable
    fs::create_directories(cfg.out / "tables");

    for (const auto& scope : collection_scopes(manifest)) {
        const auto col_b = dbeta->slice(scope.idx);
        const auto col_d = ddelta->slice(scope.idx);

        std::vector<std::pair<std::string, DistanceMatrix>> rows_m;
        for (const auto& m : mats) rows_m.emplace_back(m.metric, m.slice(scope.idx));
        if (scope_single_model(manifest, scope) && scope.name != "all") {
            auto dp = parameter_matrix(slice_manifest(manifest, scope.idx));
            rows_m.emplace_back("dparam", std::move(dp));
        }

        std::vector<std::vector<std::string>> rows;
        for (const auto& [name, m] : rows_m) {
            rows.push_back({name, fmt(fm_compare(m, col_b)), fmt(fm_compare(m, col_d)),
                            fmt(dcor_clamped(m, col_b)), fmt(dcor_clamped(m, col_d))});
        }
        auto comments = base_comments(cfg);
        comments.push_back("scope: " + scope.name);
        atomic_write(cfg.out / "tables" / ("fm_dcor_" + scope.name + ".csv"),
                     table_csv(comments, {"metric", "fm_dbeta", "fm_ddelta", "dcor_dbeta",
                                          "dcor_ddelta"},
                               rows));
    }
}

void stage_permtest(const ExperimentConfig& cfg, const CollectionManifest& manifest,
                    const std::vector<DistanceMatrix>& mats) {
    const auto* dbeta = find_matrix(mats, "dbeta");
    const auto* ddelta = find_matrix(mats, "ddelta");
    if (!dbeta || !ddelta) return;
    fs::create_directories(cfg.out / "tables");

    struct Hypothesis {
        std::string key;
        double p = 1;
    };
    std::vector<Hypothesis> all_tests;
    std::map<std::string, std::vector<std::size_t>> per_table; // table -> indexes into all_tests

    auto run_table = [&](const std::string& table, const Scope& scope, TestStat stat,
                         const std::vector<std::pair<std::string, DistanceMatrix>>& row_mats,
                         const std::vector<std::pair<std::string, const DistanceMatrix*>>& cols) {
        std::vector<std::string> header = {"metric"};
        for (const auto& [cname, cm] : cols) header.push_back("p_" + cname);
        std::vector<std::vector<std::string>> rows;
        for (const auto& [rname, rm] : row_mats) {
            std::vector<std::string> row = {rname};
            for (const auto& [cname, cm] : cols) {
                const std::string key = table + "|" + rname + "|" + cname;
                const auto res = permutation_test(rm, cm->slice(scope.idx), stat, cfg.perms,
                                                  derive_seed(cfg.seed, fnv1a64(key)));
                row.push_back(fmt(res.p_value));
                per_table[table].push_back(all_tests.size());
                all_tests.push_back({key, res.p_value});
            }
            rows.push_back(std::move(row));
        }
        auto comments = base_comments(cfg);
        comments.push_back("scope: " + scope.name);
        comments.push_back("stat: " + std::string(stat == TestStat::DCor ? "dcor" : "fm"));
        comments.push_back("perms: " + std::to_string(cfg.perms));
        atomic_write(cfg.out / "tables" / (table + ".csv"), table_csv(comments, header, rows));
    };

    for (const auto& scope : collection_scopes(manifest)) {
        std::vector<std::pair<std::string, DistanceMatrix>> row_mats;
        for (const auto& m : mats) row_mats.emplace_back(m.metric, m.slice(scope.idx));
        std::optional<DistanceMatrix> dp;
        if (scope_single_model(manifest, scope) && scope.name != "all") {
            dp = parameter_matrix(slice_manifest(manifest, scope.idx));
            row_mats.emplace_back("dparam", *dp);
        }
        std::vector<std::pair<std::string, const DistanceMatrix*>> cols = {{"dbeta", dbeta},
                                                                           {"ddelta", ddelta}};
        for (TestStat stat : {TestStat::DCor, TestStat::FM}) {
            const std::string sname = stat == TestStat::DCor ? "dcor" : "fm";
            run_table("pvalues_" + sname + "_" + scope.name, scope, stat, row_mats, cols);
        }
    }

    // corrections: Bonferroni within each table (each table is a family),
    // Benjamini-Yekutieli across every test in the run
    nlohmann::ordered_json corrections;
    corrections["alpha"] = cfg.alpha;
    nlohmann::ordered_json bonf = nlohmann::ordered_json::object();
    for (const auto& [table, idxs] : per_table) {
        std::vector<double> ps;
        for (std::size_t i : idxs) ps.push_back(all_tests[i].p);
        auto rejected = bonferroni_reject(ps, cfg.alpha);
        auto arr = nlohmann::ordered_json::array();
        for (std::size_t r : rejected) arr.push_back(all_tests[idxs[r]].key);
        bonf[table] = std::move(arr);
    }
    corrections["bonferroni"] = std::move(bonf);
    {
        std::vector<double> ps;
        for (const auto& t : all_tests) ps.push_back(t.p);
        auto rejected = benjamini_yekutieli_reject(ps, cfg.alpha);
        auto arr = nlohmann::ordered_json::array();
        for (std::size_t r : rejected) arr.push_back(all_tests[r].key);
        corrections["benjamini_yekutieli"] = std::move(arr);
        corrections["tests_total"] = all_tests.size();
    }
    atomic_write(cfg.out / "tables" / "corrections.json", corrections.dump(2) + "\n");
}

void stage_knn(const ExperimentConfig& cfg, const CollectionManifest& manifest,
               const std::vector<DistanceMatrix>& mats,
               const std::vector<GraphArtifacts>& arts) {
    fs::create_directories(cfg.out / "tables");
    const auto scopes = collection_scopes(manifest);

    // classification: per-model parameter classes, plus model classes overall
    {
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header = {"metric"};
        std::vector<Scope> param_scopes;
        for (const auto& s : scopes)
            if (s.name != "all" && scope_single_model(manifest, s)) {
                param_scopes.push_back(s);
                header.push_back(s.name + "_param_rate");
            }
        const bool mixed = scopes.size() > 1;
        if (mixed) header.push_back("model_rate");

        for (const auto& m : mats) {
            std::vector<std::string> row = {m.metric};
            for (const auto& s : param_scopes) {
                std::map<double, int> classes;
                for (std::size_t i : s.idx) classes.emplace(manifest.entries[i].params.param, 0);
                int next = 0;
                for (auto& [param, id] : classes) id = next++;
                std::vector<int> labels;
                for (std::size_t i : s.idx)
                    labels.push_back(classes[manifest.entries[i].params.param]);
                row.push_back(
                    fmt(knn_classify_loo(m.slice(s.idx), labels, cfg.knn_k).rate));
            }
            if (mixed) {
                std::vector<int> labels;
                for (const auto& e : manifest.entries) labels.push_back(int(e.params.model));
                row.push_back(fmt(knn_classify_loo(m, labels, cfg.knn_k).rate));
            }
            rows.push_back(std::move(row));
        }
        auto comments = base_comments(cfg);
        comments.push_back("knn_k: " + std::to_string(cfg.knn_k));
        atomic_write(cfg.out / "tables" / "knn_classify.csv", table_csv(comments, header, rows));
    }

    // regression: predict b(G), c(G) and the model parameter
    auto regress_table = [&](const std::string& file,
                             const std::function<std::vector<double>(std::size_t)>& target,
                             bool include_all) {
        std::vector<std::string> header = {"metric"};
        std::vector<const Scope*> used;
        for (const auto& s : scopes) {
            if (s.name == "all" && !include_all) continue;
            if (s.name == "all" && scopes.size() == 1 && !include_all) continue;
            used.push_back(&s);
            header.push_back(s.name + "_mse");
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& m : mats) {
            std::vector<std::string> row = {m.metric};
            for (const Scope* s : used) {
                std::vector<std::vector<double>> targets;
                for (std::size_t i : s->idx) targets.push_back(target(i));
                row.push_back(fmt(knn_regress_loo(m.slice(s->idx), targets, cfg.knn_k).mse));
            }
            rows.push_back(std::move(row));
        }
        auto comments = base_comments(cfg);
        comments.push_back("knn_k: " + std::to_string(cfg.knn_k));
        atomic_write(cfg.out / "tables" / file, table_csv(comments, header, rows));
    };

    if (!arts.empty() && arts[0].features) {
        regress_table("knn_regress_b.csv",
                      [&](std::size_t i) { return arts[i].features->b; }, true);
        regress_table("knn_regress_c.csv",
                      [&](std::size_t i) { return arts[i].features->c; }, true);
    }
    regress_table("knn_regress_param.csv",
                  [&](std::size_t i) {
                      return std::vector<double>{manifest.entries[i].params.param};
                  },
                  false);
}

void run_pipeline(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.out);
    atomic_write(cfg.out / "config.json", config_to_json(cfg, false));
    const auto manifest = stage_generate(cfg);
    const auto arts = stage_artifacts(cfg, manifest);
    const auto mats = stage_distances(cfg, manifest, arts);
    stage_compare(cfg, manifest, mats);
    stage_permtest(cfg, manifest, mats);
    stage_knn(cfg, manifest, mats, arts);

    // run log: configuration, seeds and emitted files; no timestamps so
    // reruns stay byte-identical
    std::ostringstream log;
    log << kVersion << "\n";
    log << "seed: " << cfg.seed << "\n";
    log << "graphs: " << manifest.entries.size() << "\n";
    log << "collection: " << manifest.kind << "\n";
    for (const auto& e : manifest.entries)
        log << "graph " << e.id << " seed " << e.seed << "\n";
    std::vector<std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(cfg.out))
        if (entry.is_regular_file() && entry.path().filename() != "run.log")
            files.push_back(fs::relative(entry.path(), cfg.out).generic_string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) log << "file " << f << "\n";
    atomic_write(cfg.out / "run.log", log.str());
}

std::string graphlets_to_json(const std::string& id, const GraphArtifacts& art) {
    if (!art.census || !art.phi || !art.orbit_dists)
        throw MissingGraphError("graphlet artifacts missing for " + id);
    nlohmann::ordered_json j;
    j["id"] = id;
    j["census"] = std::vector<std::int64_t>(art.census->counts.begin(), art.census->counts.end());
    j["phi"] = std::vector<double>(art.phi->begin(), art.phi->end());
    auto dists = nlohmann::ordered_json::array();
    for (const auto& dist : *art.orbit_dists) {
        auto sparse = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < dist.size(); ++k)
            if (dist[k] != 0.0) sparse[std::to_string(k)] = dist[k];
        dists.push_back(std::move(sparse));
    }
    j["orbit_distributions"] = std::move(dists);
    return j.dump(2) + "\n";
}

std::string portrait_to_json(const std::string& id, const Portrait& B) {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["n"] = B.n;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t l = 0; l < B.rows.size(); ++l) {
        auto sparse = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < B.rows[l].size(); ++k)
            if (B.rows[l][k] != 0) sparse[std::to_string(k)] = B.rows[l][k];
        nlohmann::ordered_json row;
        row["l"] = l;
        row["counts"] = std::move(sparse);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

} // namespace gm
