#ifndef PENSION_CLUSTER_HPP
#define PENSION_CLUSTER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pension/core_types.hpp"

namespace pension {

enum class LifeExpectancyFeature { Birth, After60, After65 };
enum class FeatureColumns { Total, BySex, All };

struct FeatureMatrix {
    Eigen::MatrixXd values;  // one row per UF
    std::vector<int> uf_nums;
    std::vector<std::string> column_names;
};

// Selected life-expectancy columns as clustering features, in years and
// unstandardized unless asked otherwise.
FeatureMatrix make_feature_matrix(const UfLifeTable& table, LifeExpectancyFeature feature,
                                  FeatureColumns columns = FeatureColumns::Total,
                                  bool standardize = false);

// Pairwise Euclidean distances; zero diagonal, symmetric.
Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& features);

// One agglomeration step. Cluster ids follow the usual convention:
// leaves are 0..n-1, the merge at step s creates id n+s.
struct Merge {
    int a = 0;
    int b = 0;  // a < b
    double height = 0.0;
    int size = 0;  // members of the new cluster
};

struct Dendrogram {
    int leaves = 0;
    std::vector<Merge> merges;  // n-1 entries, non-decreasing heights
};

// Agglomerative clustering merging at the minimum inter-cluster point
// distance. Equal heights break toward the lowest cluster-id pair, so the
// tree is deterministic.
Dendrogram single_linkage(const Eigen::MatrixXd& distances);

struct Partition {
    std::vector<int> labels;  // in [0, k); every cluster non-empty
    int k = 0;
    std::string method;
};

// Partition after n-k merges. Labels are numbered by each cluster's
// smallest member index.
Partition cut_dendrogram(const Dendrogram& dendrogram, int k);

struct KmeansResult {
    Partition partition;
    Eigen::MatrixXd centroids;  // k x d
    double objective = 0.0;     // within-cluster sum of squares
    int iterations = 0;
    std::vector<double> objective_trace;  // one value per Lloyd iteration
};

// Lloyd iterations from k-means++ seeding; a fixed seed gives bit-identical
// labels across runs. Stops on an assignment fixpoint or after 300 rounds.
KmeansResult kmeans(const Eigen::MatrixXd& features, int k, std::uint64_t seed);

// Fraction of point pairs on which two partitions agree (co-clustered in
// both or separated in both).
double rand_index(const Partition& a, const Partition& b);

struct ClusterReport {
    std::vector<int> uf_nums;
    Partition primary;
    std::optional<Partition> secondary;
    long long pairs_together_both = 0;
    long long pairs_apart_both = 0;
    long long pairs_disagreeing = 0;
    double rand = 1.0;
};

ClusterReport cluster_report(const Partition& primary, const std::vector<int>& uf_nums,
                             const std::optional<Partition>& secondary = std::nullopt);

}  // namespace pension

#endif
