#include "gm/random_models.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>

#include "gm/rng.hpp"
#include "json.hpp"

namespace gm {

std::string model_name(Model m) {
    switch (m) {
        case Model::ER: return "ER";
        case Model::GR: return "GR";
        case Model::PA: return "PA";
    }
    return "?";
}

Model model_from_name(const std::string& name) {
    if (name == "ER" || name == "er") return Model::ER;
    if (name == "GR" || name == "gr") return Model::GR;
    if (name == "PA" || name == "pa") return Model::PA;
    throw BadConfigError("unknown model: " + name);
}

DirectedGraph gen_er(Vertex n, double rho, std::uint64_t seed) {
    if (rho < 0.0 || rho > 1.0) throw BadParamError("ER rho must be in [0,1]");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            if (rng.bernoulli(rho)) edges.emplace_back(u, v);
        }
    return DirectedGraph::from_edge_list(n, edges);
}

DirectedGraph gen_gr(Vertex n, double r, std::uint64_t seed) {
    if (r < 0.0) throw BadParamError("GR radius must be nonnegative");
    Rng rng(seed);
    std::vector<double> x(n), y(n);
    for (Vertex v = 0; v < n; ++v) {
        x[v] = rng.unit();
        y[v] = rng.unit();
    }
    const double r2 = r * r;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            const double dx = x[u] - x[v], dy = y[u] - y[v];
            if (dx * dx + dy * dy > r2) continue;
            // orientation draw consumed only for edges that exist
            if (rng.bernoulli(1.0 / 3.0))
                edges.emplace_back(u, v);
            else
                edges.emplace_back(v, u);
        }
    return DirectedGraph::from_edge_list(n, edges);
}

namespace {

// Fenwick tree over integer weights; select() finds the vertex owning the
// r-th weight unit.
class WeightTree {
public:
    explicit WeightTree(std::size_t n) : tree_(n + 1, 0), size_(n) {
        log_ = 1;
        while ((std::size_t(1) << (log_ + 1)) <= n) ++log_;
    }
    void add(std::size_t i, std::int64_t delta) {
        for (++i; i <= size_; i += i & (~i + 1)) tree_[i] += delta;
    }
    std::size_t select(std::int64_t r) const {
        std::size_t pos = 0;
        for (std::size_t step = std::size_t(1) << log_; step; step >>= 1) {
            const std::size_t next = pos + step;
            if (next <= size_ && tree_[next] <= r) {
                pos = next;
                r -= tree_[next];
            }
        }
        return pos; // 0-based
    }

private:
    std::vector<std::int64_t> tree_;
    std::size_t size_;
    unsigned log_;
};

} // namespace

DirectedGraph gen_pa(Vertex n, int k, std::uint64_t seed) {
    if (k < 1 || Vertex(k) >= n) throw BadParamError("PA requires 1 <= k < n");
    Rng rng(seed);

    WeightTree weights(n);
    std::vector<std::int64_t> weight(n, 1);
    for (Vertex v = 0; v < n; ++v) weights.add(v, 1);
    std::int64_t total = n;

    std::vector<Vertex> under(n);
    for (Vertex v = 0; v < n; ++v) under[v] = v;
    std::vector<int> out_deg(n, 0);

    std::vector<Edge> edges;
    edges.reserve(std::size_t(n) * k);
    while (!under.empty()) {
        const std::size_t slot = rng.below(under.size());
        const Vertex u = under[slot];
        // a legal target always exists: n >= 2, so total - weight[u] >= 1
        assert(total - weight[u] >= 1);
        weights.add(u, -weight[u]);
        const Vertex v = Vertex(weights.select(std::int64_t(rng.below(std::uint64_t(total - weight[u])))));
        weights.add(u, weight[u]);
        assert(v != u && v < n);
        edges.emplace_back(u, v);
        weight[v] += 1;
        weights.add(v, 1);
        ++total;
        if (++out_deg[u] == k) {
            under[slot] = under.back();
            under.pop_back();
        }
    }
    return DirectedGraph::from_edge_list(n, edges); // collapses parallel edges
}

DirectedGraph generate(const ModelParams& params, std::uint64_t seed) {
    switch (params.model) {
        case Model::ER: return gen_er(params.n, params.param, seed);
        case Model::GR: return gen_gr(params.n, params.param, seed);
        case Model::PA: return gen_pa(params.n, int(std::llround(params.param)), seed);
    }
    throw BadParamError("unknown model");
}

PointGrid point_grid_paper() { return PointGrid{}; }

PointGrid point_grid_desk100() {
    PointGrid grid;
    grid.n = 100;
    // k grows with n in the PA model (k/n is the density knob), so the
    // paper's k values need rescaling at n=100. These three give mutually
    // distinct Betti profiles reaching nontrivial beta_6, stay clear of the
    // ER grid's profiles, and sit below the dense-regime wall at this n.
    grid.pa_k = {14, 20, 30};
    return grid;
}

IntervalGrid interval_grid_paper() { return IntervalGrid{}; }

IntervalGrid interval_grid_desk100() {
    IntervalGrid grid;
    grid.n = 100;
    grid.per_model = 25;
    grid.er = {{{0.0, 0.05}, {0.1, 0.15}, {0.2, 0.25}, {0.28, 0.32}}};
    grid.gr = {{{0.0, 0.045}, {0.089, 0.112}, {0.179, 0.268}, {0.335, 0.391}}};
    grid.pa = {{{4, 7}, {12, 18}, {22, 25}, {27, 30}}};
    return grid;
}

namespace {

std::string format_param(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

ManifestEntry make_entry(std::string id, Model model, double param, Vertex n,
                         std::uint64_t collection_seed) {
    ManifestEntry e;
    e.id = std::move(id);
    e.params = ModelParams{model, param, n};
    e.seed = derive_seed(collection_seed, fnv1a64(e.id));
    return e;
}

} // namespace

CollectionManifest gen_point_collection(std::uint64_t seed, const PointGrid& grid) {
    if (grid.per_param < 1) throw BadConfigError("per_param must be >= 1");
    CollectionManifest m;
    m.kind = "point";
    m.seed = seed;
    char id[64];
    auto add = [&](Model model, double param) {
        for (int rep = 0; rep < grid.per_param; ++rep) {
            std::snprintf(id, sizeof id, "%s_%s_r%02d", model_name(model).c_str(),
                          format_param(param).c_str(), rep);
            m.entries.push_back(make_entry(id, model, param, grid.n, seed));
        }
    };
    for (double rho : grid.er_rho) add(Model::ER, rho);
    for (double r : grid.gr_r) add(Model::GR, r);
    for (int k : grid.pa_k) {
        if (k < 1 || Vertex(k) >= grid.n) throw BadConfigError("PA k out of range for n");
        add(Model::PA, double(k));
    }
    return m;
}

CollectionManifest gen_interval_collection(std::uint64_t seed, const IntervalGrid& grid) {
    if (grid.per_model < 1) throw BadConfigError("per_model must be >= 1");
    CollectionManifest m;
    m.kind = "interval";
    m.seed = seed;
    Rng param_rng(derive_seed(seed, fnv1a64("interval-params")));
    char id[64];
    // fixed sampling order: model, then interval, then draws
    auto add_model = [&](Model model, const std::array<Interval, 4>& intervals) {
        const int base = grid.per_model / 4, rem = grid.per_model % 4;
        for (int iv = 0; iv < 4; ++iv) {
            const int draws = base + (iv < rem ? 1 : 0);
            for (int d = 0; d < draws; ++d) {
                double param = param_rng.uniform(intervals[iv].first, intervals[iv].second);
                if (model == Model::PA) {
                    param = double(std::llround(param));
                    if (param < 1) param = 1;
                    if (param >= grid.n) param = grid.n - 1;
                }
                std::snprintf(id, sizeof id, "%s_iv%d_d%02d", model_name(model).c_str(), iv, d);
                m.entries.push_back(make_entry(id, model, param, grid.n, seed));
            }
        }
    };
    add_model(Model::ER, grid.er);
    add_model(Model::GR, grid.gr);
    add_model(Model::PA, grid.pa);
    return m;
}

DirectedGraph materialize(const ManifestEntry& entry) {
    return generate(entry.params, entry.seed);
}

std::string manifest_to_json(const CollectionManifest& manifest) {
    nlohmann::ordered_json j;
    j["kind"] = manifest.kind;
    j["seed"] = manifest.seed;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : manifest.entries) {
        nlohmann::ordered_json je;
        je["id"] = e.id;
        je["model"] = model_name(e.params.model);
        je["param"] = e.params.param;
        je["n"] = e.params.n;
        je["seed"] = e.seed;
        j["entries"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

CollectionManifest manifest_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    CollectionManifest m;
    m.kind = j.at("kind").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& je : j.at("entries")) {
        ManifestEntry e;
        e.id = je.at("id").get<std::string>();
        e.params.model = model_from_name(je.at("model").get<std::string>());
        e.params.param = je.at("param").get<double>();
        e.params.n = je.at("n").get<Vertex>();
        e.seed = je.at("seed").get<std::uint64_t>();
        m.entries.push_back(std::move(e));
    }
    return m;
}

} // namespace gm
