#include "gm/features.hpp"

#include <cmath>

#include "json.hpp"

namespace gm {

namespace {

double log_clamp(std::int64_t x) {
    return x > 1 ? std::log(double(x)) : 0.0;
}

} // namespace

GraphFeatures compute_features(const DirectedGraph& g, int p, double eps) {
    if (p < 0 || p + 1 > DirectedFlagComplex::kMaxDim)
        throw BadParamError("max homology dimension must be in [0, 6]");

    GraphFeatures f;
    f.p = p;
    f.eps = eps;

    const auto K = build_flag_complex(g, p + 1);
    f.betti = betti_numbers_approx(K, p, eps);

    f.gamma.assign(std::size_t(p) + 1, 0);
    for (int d = 0; d <= p; ++d) f.gamma[d] = K.count(d);

    const auto mids = f.betti.midpoints();
    f.b.resize(std::size_t(p) + 1);
    f.c.resize(std::size_t(p) + 1);
    for (int d = 0; d <= p; ++d) {
        f.b[d] = log_clamp(mids[d]);
        f.c[d] = log_clamp(std::int64_t(f.gamma[d]));
    }
    return f;
}

FeatureVector feature_vector(const DirectedGraph& g, FeatureKind kind, int p, double eps) {
    const auto f = compute_features(g, p, eps);
    FeatureVector v;
    v.kind = kind;
    v.values = (kind == FeatureKind::Betti) ? f.b : f.c;
    v.exact = (kind == FeatureKind::Betti) ? f.betti.exact : true;
    v.eps = eps;
    return v;
}

std::string features_to_json(const std::string& id, const GraphFeatures& f) {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["p"] = f.p;
    if (std::isinf(f.eps))
        j["eps"] = nullptr; // exact
    else
        j["eps"] = f.eps;
    j["gamma"] = f.gamma;
    if (f.betti.exact) {
        std::vector<std::int64_t> b;
        for (const auto& iv : f.betti.betti) b.push_back(iv.lower);
        j["betti"] = b;
    } else {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& iv : f.betti.betti) arr.push_back({iv.lower, iv.upper});
        j["betti"] = arr;
    }
    j["b"] = f.b;
    j["c"] = f.c;
    return j.dump(2) + "\n";
}

GraphFeatures features_from_json(const std::string& text, std::string* id_out) {
    const auto j = nlohmann::json::parse(text);
    GraphFeatures f;
    if (id_out) *id_out = j.at("id").get<std::string>();
    f.p = j.at("p").get<int>();
    f.eps = j.at("eps").is_null() ? std::numeric_limits<double>::infinity()
                                  : j.at("eps").get<double>();
    f.gamma = j.at("gamma").get<std::vector<std::size_t>>();
    f.betti.eps = f.eps;
    f.betti.exact = true;
    for (const auto& item : j.at("betti")) {
        BettiInterval iv;
        if (item.is_array()) {
            iv.lower = item.at(0).get<std::int64_t>();
            iv.upper = item.at(1).get<std::int64_t>();
        } else {
            iv.lower = iv.upper = item.get<std::int64_t>();
        }
        if (iv.lower != iv.upper) f.betti.exact = false;
        f.betti.betti.push_back(iv);
    }
    f.b = j.at("b").get<std::vector<double>>();
    f.c = j.at("c").get<std::vector<double>>();
    return f;
}

} // namespace gm
