#include "gm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gm/rng.hpp"

namespace gm {

Dendrogram hclust_complete(const DistanceMatrix& D) {
    const std::size_t n = D.size();
    Dendrogram dend;
    dend.n = n;
    if (n <= 1) return dend;

    struct Active {
        int id;  // scipy-style cluster id
        int rep; // smallest original point, for tie-breaking
    };
    std::vector<Active> act(n);
    for (std::size_t i = 0; i < n; ++i) act[i] = {int(i), int(i)};
    // condensed working copy of pairwise cluster distances
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = D.at(i, j);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < act.size(); ++i)
            for (std::size_t j = i + 1; j < act.size(); ++j) {
                const double d = dist[i][j];
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                } else if (d == best) {
                    const int lo = std::min(act[i].rep, act[j].rep);
                    const int hi = std::max(act[i].rep, act[j].rep);
                    const int blo = std::min(act[bi].rep, act[bj].rep);
                    const int bhi = std::max(act[bi].rep, act[bj].rep);
                    if (lo < blo || (lo == blo && hi < bhi)) {
                        bi = i;
                        bj = j;
                    }
                }
            }
        dend.merges.push_back({std::min(act[bi].id, act[bj].id),
                               std::max(act[bi].id, act[bj].id), best});
        // complete linkage: distance to the merged cluster is the max
        for (std::size_t t = 0; t < act.size(); ++t) {
            if (t == bi || t == bj) continue;
            const double d = std::max(dist[bi][t], dist[bj][t]);
            dist[bi][t] = dist[t][bi] = d;
        }
        act[bi] = {int(n + step), std::min(act[bi].rep, act[bj].rep)};
        // swap-remove bj
        const std::size_t last = act.size() - 1;
        if (bj != last) {
            act[bj] = act[last];
            for (std::size_t t = 0; t < act.size(); ++t) {
                dist[bj][t] = dist[last][t];
                dist[t][bj] = dist[t][last];
            }
            dist[bj][bj] = 0.0;
        }
        act.pop_back();
    }
    return dend;
}

Clustering cut(const Dendrogram& dend, int k) {
    const std::size_t n = dend.n;
    if (k < 1 || std::size_t(k) > std::max<std::size_t>(n, 1))
        throw BadKError("cut: k must be in [1, n]");
    // union-find over the first n-k merges
    std::vector<int> parent(n + dend.merges.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const std::size_t apply = n - std::size_t(k);
    for (std::size_t t = 0; t < apply; ++t) {
        const auto& m = dend.merges[t];
        const int root = int(n + t);
        parent[find(m.a)] = root;
        parent[find(m.b)] = root;
    }
    Clustering c;
    c.assign.assign(n, -1);
    std::vector<int> id_of_root(parent.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        const int root = find(int(v));
        if (id_of_root[root] < 0) id_of_root[root] = next++;
        c.assign[v] = id_of_root[root];
    }
    c.k = next;
    return c;
}

SilhouetteResult silhouette(const DistanceMatrix& D, const Clustering& clustering) {
    const std::size_t n = D.size();
    if (clustering.assign.size() != n) throw BadClusteringError("assignment size mismatch");
    const int k = clustering.k;
    std::vector<std::size_t> size(k, 0);
    for (int c : clustering.assign) {
        if (c < 0 || c >= k) throw BadClusteringError("cluster id out of range");
        ++size[c];
    }
    for (std::size_t s : size)
        if (s == 0) throw BadClusteringError("empty cluster");

    SilhouetteResult res;
    res.values.assign(n, 0.0);
    if (k < 2) return res; // single cluster: all values 0 by convention

    std::vector<double> mean_to(k);
    for (std::size_t u = 0; u < n; ++u) {
        std::fill(mean_to.begin(), mean_to.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v)
            if (v != u) mean_to[clustering.assign[v]] += D.at(u, v);
        const int cu = clustering.assign[u];
        if (size[cu] == 1) continue; // singleton: s(u) = 0
        const double a = mean_to[cu] / double(size[cu] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c)
            if (c != cu) b = std::min(b, mean_to[c] / double(size[c]));
        const double denom = std::max(a, b);
        res.values[u] = denom > 0 ? (b - a) / denom : 0.0;
    }
    res.coefficient = std::accumulate(res.values.begin(), res.values.end(), 0.0) / double(n);
    return res;
}

int choose_k(const DistanceMatrix& D, int k_min, int k_max) {
    const std::size_t n = D.size();
    const int hi = std::min<int>(k_max, int(n) - 1);
    if (k_min < 2 || k_min > hi) throw EmptyRangeError("choose_k: empty k range");
    const auto dend = hclust_complete(D);
    int best_k = k_min;
    double best_sc = -std::numeric_limits<double>::infinity();
    for (int k = k_min; k <= hi; ++k) {
        const double sc = silhouette(D, cut(dend, k)).coefficient;
        if (sc > best_sc) {
            best_sc = sc;
            best_k = k;
        }
    }
    return best_k;
}

namespace {

double fm_from_assignments(const std::vector<int>& a, int ka, const std::vector<int>& b,
                           int kb) {
    std::vector<std::int64_t> table(std::size_t(ka) * kb, 0);
    std::vector<std::int64_t> row(ka, 0), col(kb, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++table[std::size_t(a[i]) * kb + b[i]];
        ++row[a[i]];
        ++col[b[i]];
    }
    auto pairs2 = [](std::int64_t m) { return m * (m - 1) / 2; };
    std::int64_t tp = 0, in_a = 0, in_b = 0;
    for (std::int64_t m : table) tp += pairs2(m);
    for (std::int64_t m : row) in_a += pairs2(m);
    for (std::int64_t m : col) in_b += pairs2(m);
    if (tp == 0 || in_a == 0 || in_b == 0) return 0.0;
    return double(tp) / std::sqrt(double(in_a) * double(in_b));
}

} // namespace

double fowlkes_mallows(const Clustering& a, const Clustering& b) {
    if (a.assign.size() != b.assign.size())
        throw SizeMismatchError("fowlkes_mallows: clusterings over different point sets");
    return fm_from_assignments(a.assign, a.k, b.assign, b.k);
}

double fm_compare(const DistanceMatrix& D_row, const DistanceMatrix& D_col) {
    if (D_row.size() != D_col.size())
        throw SizeMismatchError("fm_compare: collections differ in size");
    if (D_row.size() <= 1) return 1.0; // identical trivial clusterings
    const int k = choose_k(D_col);
    const auto a = cut(hclust_complete(D_row), k);
    const auto b = cut(hclust_complete(D_col), k);
    return fowlkes_mallows(a, b);
}

namespace {

// Doubly centered matrix A_{kl} = a_{kl} - rowmean_k - colmean_l + mean.
std::vector<double> double_center(const DistanceMatrix& m) {
    const std::size_t n = m.size();
    std::vector<double> rowmean(n, 0.0);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rowmean[i] += m.at(i, j);
        total += rowmean[i];
        rowmean[i] /= double(n);
    }
    total /= double(n) * double(n);
    std::vector<double> A(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A[i * n + j] = m.at(i, j) - rowmean[i] - rowmean[j] + total; // symmetric input
    return A;
}

double mean_product(const std::vector<double>& A, const std::vector<double>& B) {
    double sum = 0;
    for (std::size_t i = 0; i < A.size(); ++i) sum += A[i] * B[i];
    return sum / double(A.size());
}

constexpr double kDcovTolerance = 1e-12;

double dcor_centered(const std::vector<double>& A, const std::vector<double>& B, bool strict) {
    const double dvar_a = std::sqrt(mean_product(A, A));
    const double dvar_b = std::sqrt(mean_product(B, B));
    if (dvar_a * dvar_b == 0.0) return 0.0;
    double dcov = mean_product(A, B);
    if (strict && dcov < -kDcovTolerance)
        throw NegativeDcovError("negative distance covariance: " + std::to_string(dcov));
    if (dcov < 0.0) dcov = 0.0;
    return std::min(1.0, std::sqrt(dcov) / std::sqrt(dvar_a * dvar_b));
}

} // namespace

double dcor(const DistanceMatrix& a, const DistanceMatrix& b) {
    if (a.size() != b.size()) throw SizeMismatchError("dcor: matrices differ in size");
    return dcor_centered(double_center(a), double_center(b), true);
}

double dcor_clamped(const DistanceMatrix& a, const DistanceMatrix& b) {
    if (a.size() != b.size()) throw SizeMismatchError("dcor: matrices differ in size");
    return dcor_centered(double_center(a), double_center(b), false);
}

TestResult permutation_test(const DistanceMatrix& d1, const DistanceMatrix& d2, TestStat stat,
                            int permutations, std::uint64_t seed) {
    if (d1.size() != d2.size()) throw SizeMismatchError("permutation_test: size mismatch");
    if (permutations < 1) throw BadParamError("permutation_test: N >= 1 required");
    const std::size_t n = d1.size();

    TestResult res;
    res.permutations = permutations;

    std::vector<std::size_t> perm(n);
    auto shuffle = [&](Rng& rng) {
        std::iota(perm.begin(), perm.end(), std::size_t(0));
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    };

    int exceed = 0;
    if (stat == TestStat::DCor) {
        res.stat_name = "dcor";
        // double centering commutes with relabeling, so center once and
        // evaluate permuted replicates by index remapping
        const auto A = double_center(d1);
        const auto B = double_center(d2);
        res.statistic = dcor_centered(A, B, false);
        const double dvar_a = std::sqrt(mean_product(A, A));
        const double dvar_b = std::sqrt(mean_product(B, B));
        for (int r = 0; r < permutations; ++r) {
            Rng rng(derive_seed(seed, std::uint64_t(r) + 1));
            shuffle(rng);
            double value = 0.0;
            if (dvar_a * dvar_b > 0.0) {
                double dcov = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        dcov += A[i * n + j] * B[perm[i] * n + perm[j]];
                dcov /= double(n) * double(n);
                if (dcov < 0.0) dcov = 0.0;
                value = std::min(1.0, std::sqrt(dcov) / std::sqrt(dvar_a * dvar_b));
            }
            if (value >= res.statistic) ++exceed;
        }
    } else {
        res.stat_name = "fm";
        // relabeling D2 permutes its flat clustering and leaves the silhouette
        // curve unchanged, so cluster once and permute the assignment vector
        if (n <= 1) {
            res.statistic = 1.0;
            res.p_value = 1.0;
            return res;
        }
        const int k = choose_k(d2);
        const auto a = cut(hclust_complete(d1), k);
        const auto b = cut(hclust_complete(d2), k);
        res.statistic = fm_from_assignments(a.assign, a.k, b.assign, b.k);
        std::vector<int> permuted(n);
        for (int r = 0; r < permutations; ++r) {
            Rng rng(derive_seed(seed, std::uint64_t(r) + 1));
            shuffle(rng);
            for (std::size_t i = 0; i < n; ++i) permuted[i] = b.assign[perm[i]];
            if (fm_from_assignments(a.assign, a.k, permuted, b.k) >= res.statistic) ++exceed;
        }
    }
    res.p_value = double(exceed + 1) / double(permutations + 1);
    return res;
}

namespace {

void check_pvalues(const std::vector<double>& p, double alpha) {
    if (!(alpha > 0.0) || alpha >= 1.0) throw BadAlphaError("alpha must be in (0,1)");
    for (double x : p)
        if (!(x > 0.0) || x > 1.0) throw BadAlphaError("p-values must lie in (0,1]");
}

} // namespace

std::vector<std::size_t> bonferroni_reject(const std::vector<double>& p_values, double alpha) {
    check_pvalues(p_values, alpha);
    std::vector<std::size_t> rejected;
    const double cutoff = alpha / double(p_values.size());
    for (std::size_t i = 0; i < p_values.size(); ++i)
        if (p_values[i] <= cutoff) rejected.push_back(i);
    return rejected;
}

std::vector<std::size_t> benjamini_yekutieli_reject(const std::vector<double>& p_values,
                                                    double alpha) {
    check_pvalues(p_values, alpha);
    const std::size_t N = p_values.size();
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    double harmonic = 0;
    for (std::size_t j = 1; j <= N; ++j) harmonic += 1.0 / double(j);
    std::size_t k = 0;
    for (std::size_t i = 1; i <= N; ++i)
        if (p_values[order[i - 1]] <= double(i) * alpha / (double(N) * harmonic)) k = i;
    std::vector<std::size_t> rejected(order.begin(), order.begin() + k);
    std::sort(rejected.begin(), rejected.end());
    return rejected;
}

namespace {

std::vector<std::size_t> nearest_neighbors(const DistanceMatrix& D, std::size_t i, int k) {
    const std::size_t n = D.size();
    std::vector<std::size_t> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
        if (j != i) others.push_back(j);
    std::sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
        const double da = D.at(i, a), db = D.at(i, b);
        return da != db ? da < db : a < b;
    });
    others.resize(std::size_t(k));
    return others;
}

} // namespace

KnnClassification knn_classify_loo(const DistanceMatrix& D, const std::vector<int>& labels,
                                   int k) {
    const std::size_t n = D.size();
    if (labels.size() != n) throw SizeMismatchError("knn: labels size mismatch");
    if (k < 1 || std::size_t(k) > n - 1) throw BadKError("knn: k must be in [1, n-1]");

    KnnClassification res;
    res.predicted.assign(n, -1);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = nearest_neighbors(D, i, k);
        std::vector<int> votes;
        int best = 0;
        for (std::size_t j : nb) {
            const int l = labels[j];
            if (l >= int(votes.size())) votes.resize(l + 1, 0);
            best = std::max(best, ++votes[l]);
        }
        // vote tie: the nearest neighbor with a tied label wins
        int pick = -1;
        for (std::size_t j : nb)
            if (votes[labels[j]] == best) {
                pick = labels[j];
                break;
            }
        res.predicted[i] = pick;
        if (pick == labels[i]) ++correct;
    }
    res.rate = double(correct) / double(n);
    return res;
}

KnnRegression knn_regress_loo(const DistanceMatrix& D,
                              const std::vector<std::vector<double>>& targets, int k) {
    const std::size_t n = D.size();
    if (targets.size() != n) throw SizeMismatchError("knn: targets size mismatch");
    if (k < 1 || std::size_t(k) > n - 1) throw BadKError("knn: k must be in [1, n-1]");

    KnnRegression res;
    res.predicted.resize(n);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = nearest_neighbors(D, i, k);
        std::vector<double> pred(targets[i].size(), 0.0);
        for (std::size_t j : nb) {
            if (targets[j].size() != pred.size())
                throw SizeMismatchError("knn: target vectors differ in length");
            for (std::size_t t = 0; t < pred.size(); ++t) pred[t] += targets[j][t];
        }
        for (double& x : pred) x /= double(k);
        double err = 0;
        for (std::size_t t = 0; t < pred.size(); ++t) {
            const double d = pred[t] - targets[i][t];
            err += d * d;
        }
        total += err;
        res.predicted[i] = std::move(pred);
    }
    res.mse = total / double(n);
    return res;
}

} // namespace gm
