#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bfpm/dataset.hpp"
#include "bfpm/distance.hpp"
#include "bfpm/membership.hpp"

namespace bfpm {

/// Partition coefficient: (1/n) sum_ij u_ij^2. Equals 1 on a hard
/// partition; bounded memberships can push it above 1.
double v_pc(const PartitionMatrix& pm);

/// Partition entropy: -(1/n) sum_ij u_ij ln(u_ij), with 0 ln 0 = 0.
/// Zero exactly on a hard partition.
double v_pe(const PartitionMatrix& pm);

/// Xie-Beni: sum_ij u_ij^2 ||O_j - v_i||^2 / (n * min_{i != k} ||v_i - v_k||^2)
/// with Euclidean norms. Throws Error for c < 2 or coincident centroids.
double v_xb(const PartitionMatrix& pm, const Dataset& ds, const Matrix& centroids);

/// Davies-Bouldin over the hardened assignment: with e_i the mean squared
/// Euclidean distance of cluster i's members to its centroid and D_ik the
/// centroid distance, DB = (1/c) sum_i max_{k != i} (e_i + e_k) / D_ik.
/// Throws Error on empty clusters or coincident centroids.
double db_index(const PartitionMatrix& pm, const Dataset& ds, const Matrix& centroids);

/// CS index over the hardened assignment: mean per-cluster worst-case
/// member-to-member distance, divided by the sum over clusters of the
/// nearest-centroid separation min_{k != i} D(P_i, P_k).
/// Throws Error on empty clusters or a zero denominator.
double cs_index(const PartitionMatrix& pm, const Dataset& ds, const Matrix& centroids);

/// The two building blocks of the G index:
///   DS_s = (1/n^2) sum_{j1,j2} D^2(O_j1, O_j2) * w2, where w2 pairs the top
///          membership of j1 with the best membership of j2 outside that
///          cluster (separation mass);
///   CP   = (2/(n(n-1))) sum_{j1<j2} sum_i D^2 * min(u_ij1, u_ij2)
///          (compactness mass).
struct GComponents {
    double ds_s = 0.0;
    double cp = 0.0;
};

GComponents g_components(const PartitionMatrix& pm, const Dataset& ds,
                         const DistanceSpec& spec = DistanceSpec());

/// G = DS_s / CP. Throws Error when CP is 0 (all pairwise minima vanish,
/// e.g. a hard partition with every pair split across clusters).
double g_index(const PartitionMatrix& pm, const Dataset& ds,
               const DistanceSpec& spec = DistanceSpec());

/// I_G = G / G^y for a configurable exponent y > 0 (0.5, 1, 2, ...).
double ig_index(const PartitionMatrix& pm, const Dataset& ds, double y,
                const DistanceSpec& spec = DistanceSpec());

/// Fraction of objects whose hardened cluster, after mapping clusters to
/// classes, matches the given labels. The default mapping gives each
/// cluster the majority class of its members (ties to the lowest class id);
/// hungarian = true instead picks the one-to-one assignment maximizing the
/// number of matches.
double clustering_accuracy(const PartitionMatrix& pm, const std::vector<int>& labels,
                           bool hungarian = false);

/// Per-object gap between the winning membership and the best of the rest,
/// plus counts of objects whose runner-up exceeds each threshold.
struct MutationReport {
    std::vector<std::size_t> own_cluster;
    std::vector<double> own_membership;
    std::vector<std::size_t> runner_up_cluster;
    std::vector<double> runner_up_membership;
    /// (threshold, count of objects with runner-up > threshold)
    std::vector<std::pair<double, std::size_t>> threshold_counts;
};

MutationReport mutation_report(const PartitionMatrix& pm,
                               const std::vector<double>& thresholds = {0.85, 0.75,
                                                                        0.70});

/// An object whose top memberships are within epsilon of each other: the
/// clusters listed are all i with u_i > 0 and u_max - u_i < epsilon, and at
/// least two clusters qualify.
struct CriticalFlag {
    std::size_t object = 0;
    double epsilon = 0.0; ///< the closeness bound that produced the flag
    std::vector<std::size_t> clusters;
};

std::vector<CriticalFlag> detect_critical(const PartitionMatrix& pm, double epsilon);

} // namespace bfpm
