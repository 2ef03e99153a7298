#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gm/distance_matrix.hpp"

namespace gm {

/// Complete-linkage merge tree. Original points are 0..n-1; the t-th merge
/// creates cluster id n+t. Heights are nondecreasing.
struct Dendrogram {
    struct Merge {
        int a = 0, b = 0;
        double height = 0;
    };
    std::size_t n = 0;
    std::vector<Merge> merges;
};

struct Clustering {
    std::vector<int> assign; // cluster ids 0..k-1, ordered by smallest member
    int k = 0;
};

/// Agglomerative clustering, complete linkage (cluster distance = maximum
/// point distance). Ties are broken by the smallest pair of cluster
/// representatives, so results are deterministic.
Dendrogram hclust_complete(const DistanceMatrix& D);

/// Flat clustering with exactly k clusters (the state before the last k-1
/// merges). BadK unless 1 <= k <= n.
Clustering cut(const Dendrogram& dend, int k);

struct SilhouetteResult {
    std::vector<double> values;
    double coefficient = 0; // mean silhouette value
};

/// s(u) = (b(u)-a(u)) / max(a(u),b(u)); 0 for points in singleton clusters.
SilhouetteResult silhouette(const DistanceMatrix& D, const Clustering& clustering);

/// k in [k_min, min(k_max, n-1)] maximizing the silhouette coefficient of
/// cut(hclust_complete(D), k); ties go to the smallest k.
int choose_k(const DistanceMatrix& D, int k_min = 2, int k_max = 25);

/// Pair-counting index sqrt(TP/(TP+FP) * TP/(TP+FN)); defined as 0 when
/// TP = 0 (or when either clustering has no within-cluster pairs).
double fowlkes_mallows(const Clustering& a, const Clustering& b);

/// FM index of the two matrices' clusterings at k* chosen by silhouette
/// analysis of the *column* pseudometric; asymmetric by design.
double fm_compare(const DistanceMatrix& D_row, const DistanceMatrix& D_col);

/// Sample distance correlation of two pseudometric samples on the same
/// labeled points: doubly center both matrices, dcov = mean(A.*B),
/// dCor = sqrt(dcov) / sqrt(dVar_a * dVar_b); 0 when either variance
/// vanishes. NegativeDcov if dcov < -1e-12; values in (-1e-12, 0) clamp to 0.
double dcor(const DistanceMatrix& a, const DistanceMatrix& b);

/// Total variant mapping any negative dcov to 0. Sample dcov can go genuinely
/// negative for matrices that embed in no Euclidean space (the random
/// control); batch tables and permutation replicates use this form so a null
/// baseline cannot abort a run.
double dcor_clamped(const DistanceMatrix& a, const DistanceMatrix& b);

enum class TestStat { DCor, FM };

struct TestResult {
    std::string stat_name;
    double statistic = 0; // on the original pairing
    int permutations = 0;
    double p_value = 1; // add-one estimator, never below 1/(N+1)
};

/// Permutation test of independence: relabel D2 by a random permutation
/// (simultaneous row+column) N times; p = (1 + #{permuted stat >= original})
/// / (N+1). Replicate r uses an Rng seeded by derive_seed(seed, r+1), so
/// results are reproducible and order-independent.
TestResult permutation_test(const DistanceMatrix& d1, const DistanceMatrix& d2, TestStat stat,
                            int permutations, std::uint64_t seed);

/// Indices rejected at family-wise level alpha: p_i <= alpha / N.
std::vector<std::size_t> bonferroni_reject(const std::vector<double>& p_values, double alpha);

/// Benjamini-Yekutieli step-up with harmonic correction C(N): rejects the k
/// smallest p-values where k = max{ i : p_(i) <= i*alpha / (N*C(N)) }.
std::vector<std::size_t> benjamini_yekutieli_reject(const std::vector<double>& p_values,
                                                    double alpha);

struct KnnClassification {
    double rate = 0;
    std::vector<int> predicted;
};

/// Leave-one-out k-NN majority vote. Neighbor ties break by index; vote ties
/// break by the nearest neighbor carrying a tied label.
KnnClassification knn_classify_loo(const DistanceMatrix& D, const std::vector<int>& labels,
                                   int k);

struct KnnRegression {
    double mse = 0; // mean squared Euclidean residual norm
    std::vector<std::vector<double>> predicted;
};

/// Leave-one-out k-NN regression: predict the mean target vector of the k
/// nearest neighbors.
KnnRegression knn_regress_loo(const DistanceMatrix& D,
                              const std::vector<std::vector<double>>& targets, int k);

} // namespace gm
