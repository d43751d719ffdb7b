#include "pension/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pension {

namespace {

double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa; identical stream on every platform.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

FeatureMatrix make_feature_matrix(const UfLifeTable& table, LifeExpectancyFeature feature,
                                  FeatureColumns columns, bool standardize) {
    const auto pick = [feature](const UfLifeRow& r, int which) {
        switch (feature) {
            case LifeExpectancyFeature::Birth:
                return which == 0 ? r.le_birth_total
                                  : (which == 1 ? r.le_birth_male : r.le_birth_female);
            case LifeExpectancyFeature::After60:
                return which == 0 ? r.le_after60_total
                                  : (which == 1 ? r.le_after60_male : r.le_after60_female);
            case LifeExpectancyFeature::After65:
                return which == 0 ? r.le_after65_total
                                  : (which == 1 ? r.le_after65_male : r.le_after65_female);
        }
        return 0.0;
    };
    const char* base = feature == LifeExpectancyFeature::Birth
                           ? "le_birth"
                           : (feature == LifeExpectancyFeature::After60 ? "le_after60"
                                                                        : "le_after65");

    std::vector<int> which;
    std::vector<std::string> names;
    if (columns == FeatureColumns::Total || columns == FeatureColumns::All) {
        which.push_back(0);
        names.push_back(std::string(base) + "_total");
    }
    if (columns == FeatureColumns::BySex || columns == FeatureColumns::All) {
        which.push_back(1);
        names.push_back(std::string(base) + "_male");
        which.push_back(2);
        names.push_back(std::string(base) + "_female");
    }

    FeatureMatrix fm;
    fm.column_names = std::move(names);
    fm.values.resize(static_cast<Eigen::Index>(table.size()),
                     static_cast<Eigen::Index>(which.size()));
    Eigen::Index i = 0;
    for (const UfLifeRow& row : table.rows()) {
        fm.uf_nums.push_back(row.uf_num);
        for (std::size_t c = 0; c < which.size(); ++c) {
            fm.values(i, static_cast<Eigen::Index>(c)) = pick(row, which[c]);
        }
        ++i;
    }

    if (standardize) {
        for (Eigen::Index c = 0; c < fm.values.cols(); ++c) {
            const double mean = fm.values.col(c).mean();
            fm.values.col(c).array() -= mean;
            const auto n = static_cast<double>(fm.values.rows());
            const double sd = std::sqrt(fm.values.col(c).squaredNorm() / (n - 1.0));
            if (sd > 0.0) fm.values.col(c) /= sd;
        }
    }
    return fm;
}

Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& features) {
    const auto n = features.rows();
    if (n < 2) throw std::invalid_argument("distance matrix needs at least two rows");
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (features.row(i) - features.row(j)).norm();
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }
    return dist;
}

Dendrogram single_linkage(const Eigen::MatrixXd& distances) {
    const auto n = static_cast<int>(distances.rows());
    if (distances.cols() != n || n < 2) {
        throw std::invalid_argument("distance matrix must be square with >= 2 rows");
    }

    // Active clusters with current single-linkage distances; n is small
    // enough here that the quadratic scan per merge is the simple choice.
    struct Cluster {
        int id;
        int size;
    };
    std::vector<Cluster> active;
    active.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active.push_back({i, 1});
    // dist[i][j] between active clusters (by position).
    std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = distances(i, j);
    }

    Dendrogram out;
    out.leaves = n;
    out.merges.reserve(static_cast<std::size_t>(n - 1));
    int next_id = n;
    while (active.size() > 1) {
        std::size_t best_i = 0, best_j = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double d = dist[i][j];
                // Ties break toward the lowest id pair.
                const int lo = std::min(active[i].id, active[j].id);
                const int hi = std::max(active[i].id, active[j].id);
                const int cur_lo = std::min(active[best_i].id, active[best_j].id);
                const int cur_hi = std::max(active[best_i].id, active[best_j].id);
                if (d < best ||
                    (d == best && (lo < cur_lo || (lo == cur_lo && hi < cur_hi)))) {
                    best = d;
                    best_i = i;
                    best_j = j;
                }
            }
        }

        Merge merge;
        merge.a = std::min(active[best_i].id, active[best_j].id);
        merge.b = std::max(active[best_i].id, active[best_j].id);
        merge.height = best;
        merge.size = active[best_i].size + active[best_j].size;
        out.merges.push_back(merge);

        // Lance-Williams single linkage: d(new, other) = min(d(a), d(b)).
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == best_i || k == best_j) continue;
            dist[best_i][k] = dist[k][best_i] = std::min(dist[best_i][k], dist[best_j][k]);
        }
        active[best_i] = {next_id++, merge.size};
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_j));
        for (auto& row : dist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(best_j));
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(best_j));
    }
    return out;
}

Partition cut_dendrogram(const Dendrogram& dendrogram, int k) {
    const int n = dendrogram.leaves;
    if (k < 1 || k > n) {
        throw std::invalid_argument("cluster count must lie in [1, " + std::to_string(n) +
                                    "], got " + std::to_string(k));
    }
    // Union-find over leaf and merge ids; apply the first n-k merges.
    std::vector<int> parent(static_cast<std::size_t>(2 * n - 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (int s = 0; s < n - k; ++s) {
        const Merge& m = dendrogram.merges[static_cast<std::size_t>(s)];
        const int id = n + s;
        parent[static_cast<std::size_t>(find(m.a))] = id;
        parent[static_cast<std::size_t>(find(m.b))] = id;
    }

    // Number clusters by their smallest member.
    Partition part;
    part.k = k;
    part.method = "single_linkage";
    part.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> root_label(static_cast<std::size_t>(2 * n - 1), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (root_label[static_cast<std::size_t>(root)] < 0) {
            root_label[static_cast<std::size_t>(root)] = next++;
        }
        part.labels[static_cast<std::size_t>(i)] = root_label[static_cast<std::size_t>(root)];
    }
    return part;
}

KmeansResult kmeans(const Eigen::MatrixXd& features, int k, std::uint64_t seed) {
    const auto n = features.rows();
    if (k < 1 || k > n) {
        throw std::invalid_argument("cluster count must lie in [1, " + std::to_string(n) +
                                    "], got " + std::to_string(k));
    }

    std::mt19937_64 rng(seed);
    const auto d = features.cols();

    // k-means++ seeding.
    std::vector<Eigen::Index> centers;
    centers.push_back(static_cast<Eigen::Index>(
        std::min<double>(static_cast<double>(n) - 1.0, uniform01(rng) * static_cast<double>(n))));
    Eigen::VectorXd dist2 = (features.rowwise() - features.row(centers[0])).rowwise().squaredNorm();
    while (static_cast<int>(centers.size()) < k) {
        const double total = dist2.sum();
        Eigen::Index chosen = -1;
        if (total > 0.0) {
            double target = uniform01(rng) * total;
            for (Eigen::Index i = 0; i < n; ++i) {
                target -= dist2[i];
                if (target <= 0.0) {
                    chosen = i;
                    break;
                }
            }
            if (chosen < 0) chosen = n - 1;
        } else {
            // All remaining mass is zero (duplicate points): first unused row.
            for (Eigen::Index i = 0; i < n; ++i) {
                if (std::find(centers.begin(), centers.end(), i) == centers.end()) {
                    chosen = i;
                    break;
                }
            }
        }
        centers.push_back(chosen);
        dist2 = dist2.cwiseMin(
            (features.rowwise() - features.row(chosen)).rowwise().squaredNorm());
    }

    Eigen::MatrixXd centroids(k, d);
    for (int c = 0; c < k; ++c) centroids.row(c) = features.row(centers[static_cast<std::size_t>(c)]);

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    KmeansResult result;
    constexpr int kMaxIterations = 300;
    int iteration = 0;
    for (; iteration < kMaxIterations; ++iteration) {
        // Assignment: nearest centroid, lowest index on ties.
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (features.row(i) - centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double dd = (features.row(i) - centroids.row(c)).squaredNorm();
                if (dd < best_d) {
                    best_d = dd;
                    best = c;
                }
            }
            if (labels[static_cast<std::size_t>(i)] != best) {
                labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }

        // Empty clusters steal the point farthest from its centroid.
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (int lab : labels) ++counts[static_cast<std::size_t>(lab)];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index worst = 0;
            double worst_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const int lab = labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(lab)] <= 1) continue;
                const double dd = (features.row(i) - centroids.row(lab)).squaredNorm();
                if (dd > worst_d) {
                    worst_d = dd;
                    worst = i;
                }
            }
            --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(worst)])];
            labels[static_cast<std::size_t>(worst)] = c;
            ++counts[static_cast<std::size_t>(c)];
            changed = true;
        }

        double objective = 0.0;
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, d);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int lab = labels[static_cast<std::size_t>(i)];
            objective += (features.row(i) - centroids.row(lab)).squaredNorm();
            sums.row(lab) += features.row(i);
        }
        result.objective_trace.push_back(objective);

        if (!changed) break;
        for (int c = 0; c < k; ++c) {
            centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
    }

    double objective = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        objective += (features.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    }
    result.partition = Partition{std::move(labels), k, "kmeans"};
    result.centroids = std::move(centroids);
    result.objective = objective;
    result.iterations = iteration + 1;
    return result;
}

double rand_index(const Partition& a, const Partition& b) {
    if (a.labels.size() != b.labels.size()) {
        throw std::invalid_argument("partitions cover different point sets");
    }
    const std::size_t n = a.labels.size();
    if (n < 2) return 1.0;
    long long agree = 0;
    long long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_a = a.labels[i] == a.labels[j];
            const bool same_b = b.labels[i] == b.labels[j];
            if (same_a == same_b) ++agree;
            ++total;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(total);
}

ClusterReport cluster_report(const Partition& primary, const std::vector<int>& uf_nums,
                             const std::optional<Partition>& secondary) {
    if (primary.labels.size() != uf_nums.size()) {
        throw std::invalid_argument("partition and UF list sizes differ");
    }
    ClusterReport report;
    report.uf_nums = uf_nums;
    report.primary = primary;
    report.secondary = secondary;
    if (secondary.has_value()) {
        if (secondary->labels.size() != uf_nums.size()) {
            throw std::invalid_argument("partition and UF list sizes differ");
        }
        const std::size_t n = uf_nums.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool same_a = primary.labels[i] == primary.labels[j];
                const bool same_b = secondary->labels[i] == secondary->labels[j];
                if (same_a && same_b) ++report.pairs_together_both;
                else if (!same_a && !same_b) ++report.pairs_apart_both;
                else ++report.pairs_disagreeing;
            }
        }
        const long long total = report.pairs_together_both + report.pairs_apart_both +
                                report.pairs_disagreeing;
        report.rand = total > 0 ? static_cast<double>(report.pairs_together_both +
                                                      report.pairs_apart_both) /
                                      static_cast<double>(total)
                                : 1.0;
    }
    return report;
}

}  // namespace pension
