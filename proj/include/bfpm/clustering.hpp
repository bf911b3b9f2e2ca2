#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfpm/dataset.hpp"
#include "bfpm/distance.hpp"
#include "bfpm/membership.hpp"

namespace bfpm {

/// Parameters shared by all clustering runs. epsilon is compared against
/// the largest squared centroid displacement of an iteration; the run stops
/// when that drops below epsilon or when max_iter is reached.
struct ClusterConfig {
    enum class Algorithm { fpm, fpm1, fpm2, bfpm, bfpm_wfd };
    Algorithm algorithm = Algorithm::bfpm;
    std::size_t c = 2;
    double m = 2.0;
    double epsilon = 1e-6;
    std::size_t max_iter = 300;
    std::uint64_t seed = 42;
    DistanceSpec distance;
    bool raw_exponent = false; ///< evaluate the membership sum with +1/m
};

const char* algorithm_name(ClusterConfig::Algorithm a);
ClusterConfig::Algorithm algorithm_from_name(const std::string& name);

struct ClusterResult {
    PartitionMatrix pm;  ///< c x n memberships against the final centroids
    Matrix centroids;    ///< c x d
    std::size_t iterations = 0;
    bool converged = false;          ///< displacement fell below epsilon
    double objective = 0.0;          ///< J_m of the returned pm and centroids
    std::vector<double> objective_trace; ///< J_m after each iteration
    std::vector<std::string> events;     ///< degenerate-handling log
};

/// Initial centroids: c distinct object indices drawn by a seeded shuffle.
Matrix init_centroids(const Dataset& ds, std::size_t c, std::uint64_t seed);

/// The feature-weight membership candidate used by run_fpm1/run_fpm2 for
/// (cluster i, object j): with per-feature weights w_f = max(0, 1 - |v_if -
/// x_jf|), returns mean_f w_f when strictly more than half the features have
/// w_f > 0.5 and the formula membership u1 is below 0.5; otherwise 0.
double second_step_candidate(const Dataset& ds, const Matrix& centroids,
                             std::size_t i, std::size_t j, double u1);

/// J_m(U, V) = sum_i sum_j u_ij^m dist(O_j, v_i)^2, a convergence
/// diagnostic (lower is tighter).
double objective_value(const Dataset& ds, const PartitionMatrix& pm,
                       const Matrix& centroids, double m,
                       const DistanceSpec& spec);

/// Plain fuzzy-possibilistic clustering: alternate the membership formula
/// and the weighted-mean centroid update until the centroids settle.
ClusterResult run_fpm(const Dataset& ds, const ClusterConfig& cfg);

/// First refinement: each iteration additionally scores every (cluster,
/// object) pair feature-by-feature with weights w_f = max(0, 1 - |v_f - x_f|).
/// When strictly more than half the features score above 0.5 and the formula
/// membership is below 0.5, the mean feature weight becomes a second
/// membership candidate; the element-wise maximum of the two drives the
/// centroid update.
ClusterResult run_fpm1(const Dataset& ds, const ClusterConfig& cfg);

/// Second refinement: runs the plain loop to convergence, then applies the
/// feature-weight step of run_fpm1 once against the final centroids. The
/// centroids are untouched by the merge.
ClusterResult run_fpm2(const Dataset& ds, const ClusterConfig& cfg);

/// Bounded run with plain Euclidean distance (requires lp, p = 2).
ClusterResult run_bfpm(const Dataset& ds, const ClusterConfig& cfg);

/// Bounded run with weighted feature distance (requires family wfd).
ClusterResult run_bfpm_wfd(const Dataset& ds, const ClusterConfig& cfg);

/// Dispatches on cfg.algorithm.
ClusterResult run_clustering(const Dataset& ds, const ClusterConfig& cfg);

} // namespace bfpm
