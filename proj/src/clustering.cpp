#include "bfpm/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "bfpm/errors.hpp"
#include "bfpm/rng.hpp"

namespace bfpm {

const char* algorithm_name(ClusterConfig::Algorithm a) {
    switch (a) {
    case ClusterConfig::Algorithm::fpm: return "fpm";
    case ClusterConfig::Algorithm::fpm1: return "fpm1";
    case ClusterConfig::Algorithm::fpm2: return "fpm2";
    case ClusterConfig::Algorithm::bfpm: return "bfpm";
    case ClusterConfig::Algorithm::bfpm_wfd: return "bfpm_wfd";
    }
    return "?";
}

ClusterConfig::Algorithm algorithm_from_name(const std::string& name) {
    if (name == "fpm") return ClusterConfig::Algorithm::fpm;
    if (name == "fpm1") return ClusterConfig::Algorithm::fpm1;
    if (name == "fpm2") return ClusterConfig::Algorithm::fpm2;
    if (name == "bfpm") return ClusterConfig::Algorithm::bfpm;
    if (name == "bfpm_wfd") return ClusterConfig::Algorithm::bfpm_wfd;
    throw ConfigError("unknown algorithm '" + name + "'");
}

Matrix init_centroids(const Dataset& ds, std::size_t c, std::uint64_t seed) {
    if (c < 1) throw ConfigError("c must be at least 1");
    if (c > ds.n()) throw ConfigError("c exceeds n");
    Rng rng(seed);
    std::vector<std::size_t> perm = rng.permutation(ds.n());
    Matrix v(c, ds.d());
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t f = 0; f < ds.d(); ++f) v(i, f) = ds.X(perm[i], f);
    return v;
}

double objective_value(const Dataset& ds, const PartitionMatrix& pm,
                       const Matrix& centroids, double m,
                       const DistanceSpec& spec) {
    double j = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t obj = 0; obj < pm.n(); ++obj) {
            const double dist =
                distance(ds.X.row(obj), centroids.row(i), ds.d(), spec);
            j += std::pow(pm(i, obj), m) * dist * dist;
        }
    return j;
}

namespace {

void check_config(const Dataset& ds, const ClusterConfig& cfg) {
    if (!ds.normalized)
        throw ConfigError("clustering requires a normalized dataset");
    if (cfg.c < 1) throw ConfigError("c must be at least 1");
    if (cfg.c > ds.n()) throw ConfigError("c exceeds n");
    if (!(cfg.m > 1.0)) throw ConfigError("m must be > 1");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
    if (cfg.max_iter < 1) throw ConfigError("max_iter must be at least 1");
    check_spec(cfg.distance, ds.d());
}

PartitionMatrix memberships_against(const Dataset& ds, const Matrix& v,
                                    const ClusterConfig& cfg) {
    PartitionMatrix pm(v.rows(), ds.n(), Regime::bfpm);
    std::vector<double> obj(ds.d());
    for (std::size_t j = 0; j < ds.n(); ++j) {
        std::copy(ds.X.row(j), ds.X.row(j) + ds.d(), obj.begin());
        std::vector<double> u =
            bfpm_membership(obj, v, cfg.m, cfg.distance, cfg.raw_exponent);
        for (std::size_t i = 0; i < v.rows(); ++i) pm.set(i, j, u[i]);
    }
    return pm;
}

// Index of the object farthest (by min distance) from every current
// centroid; used to re-home a degenerate centroid.
std::size_t farthest_object(const Dataset& ds, const Matrix& v,
                            const DistanceSpec& spec) {
    std::size_t best = 0;
    double best_gap = -1.0;
    for (std::size_t j = 0; j < ds.n(); ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < v.rows(); ++i)
            nearest = std::min(nearest, distance(ds.X.row(j), v.row(i), ds.d(), spec));
        if (nearest > best_gap) {
            best_gap = nearest;
            best = j;
        }
    }
    if (!(best_gap > 0.0))
        throw Error("cannot reseed a centroid: every object coincides with one");
    return best;
}

void assign_row(Matrix& v, std::size_t i, const Dataset& ds, std::size_t obj) {
    for (std::size_t f = 0; f < ds.d(); ++f) v(i, f) = ds.X(obj, f);
}

bool rows_equal(const Matrix& v, std::size_t a, std::size_t b) {
    return std::memcmp(v.row(a), v.row(b), v.cols() * sizeof(double)) == 0;
}

// The feature-weight second step shared by fpm1 and fpm2: candidate
// membership u2 for (cluster i, object j), or 0 when the gate fails.
double second_step_value(const Dataset& ds, const Matrix& v, std::size_t i,
                         std::size_t j, double u1) {
    const std::size_t d = ds.d();
    double sum = 0.0;
    std::size_t above_half = 0;
    for (std::size_t f = 0; f < d; ++f) {
        const double w = std::max(0.0, 1.0 - std::fabs(v(i, f) - ds.X(j, f)));
        sum += w;
        if (w > 0.5) ++above_half;
    }
    if (2 * above_half > d && u1 < 0.5) return sum / static_cast<double>(d);
    return 0.0;
}

PartitionMatrix merge_second_step(const Dataset& ds, const Matrix& v,
                                  const PartitionMatrix& u1) {
    PartitionMatrix merged = u1;
    for (std::size_t i = 0; i < u1.c(); ++i)
        for (std::size_t j = 0; j < u1.n(); ++j) {
            const double u2 = second_step_value(ds, v, i, j, u1(i, j));
            if (u2 > u1(i, j)) merged.set(i, j, u2);
        }
    return merged;
}

// Shared alternating loop. with_second_step injects the fpm1 per-iteration
// merge; fpm, fpm2, bfpm and bfpm_wfd all run the plain body.
ClusterResult engine(const Dataset& ds, const ClusterConfig& cfg,
                     bool with_second_step) {
    check_config(ds, cfg);

    ClusterResult res;
    Matrix v = init_centroids(ds, cfg.c, cfg.seed);

    // Drawing distinct indices does not rule out duplicate rows; re-home
    // clashing centroids so clusters start apart.
    for (std::size_t i = 0; i < cfg.c; ++i)
        for (std::size_t k = i + 1; k < cfg.c; ++k)
            if (rows_equal(v, i, k)) {
                const std::size_t obj = farthest_object(ds, v, cfg.distance);
                assign_row(v, k, ds, obj);
                std::ostringstream msg;
                msg << "reseeded coincident centroid " << k << " to object " << obj
                    << " at init";
                res.events.push_back(msg.str());
            }

    while (res.iterations < cfg.max_iter) {
        ++res.iterations;
        PartitionMatrix u = memberships_against(ds, v, cfg);
        if (with_second_step) u = merge_second_step(ds, v, u);

        Matrix v_new;
        try {
            v_new = update_centroids(ds, u, cfg.m);
        } catch (const Error&) {
            // A cluster lost every object; re-home it and carry on.
            for (std::size_t i = 0; i < cfg.c; ++i) {
                double mass = 0.0;
                for (std::size_t j = 0; j < ds.n(); ++j) mass += u(i, j);
                if (mass == 0.0) {
                    const std::size_t obj = farthest_object(ds, v, cfg.distance);
                    assign_row(v, i, ds, obj);
                    std::ostringstream msg;
                    msg << "reseeded empty cluster " << i << " to object " << obj
                        << " at iteration " << res.iterations;
                    res.events.push_back(msg.str());
                }
            }
            continue;
        }

        double max_disp = 0.0;
        for (std::size_t i = 0; i < cfg.c; ++i) {
            double disp = 0.0;
            for (std::size_t f = 0; f < ds.d(); ++f) {
                const double delta = v_new(i, f) - v(i, f);
                disp += delta * delta;
            }
            max_disp = std::max(max_disp, disp);
        }
        v = v_new;
        res.objective_trace.push_back(objective_value(ds, u, v, cfg.m, cfg.distance));
        if (max_disp < cfg.epsilon) {
            res.converged = true;
            break;
        }
    }

    // Report memberships consistent with the centroids actually returned.
    PartitionMatrix final_u = memberships_against(ds, v, cfg);
    if (with_second_step) final_u = merge_second_step(ds, v, final_u);
    res.centroids = std::move(v);
    res.pm = std::move(final_u);
    res.objective = objective_value(ds, res.pm, res.centroids, cfg.m, cfg.distance);
    return res;
}

} // namespace

double second_step_candidate(const Dataset& ds, const Matrix& centroids,
                             std::size_t i, std::size_t j, double u1) {
    return second_step_value(ds, centroids, i, j, u1);
}

ClusterResult run_fpm(const Dataset& ds, const ClusterConfig& cfg) {
    return engine(ds, cfg, /*with_second_step=*/false);
}

ClusterResult run_fpm1(const Dataset& ds, const ClusterConfig& cfg) {
    return engine(ds, cfg, /*with_second_step=*/true);
}

ClusterResult run_fpm2(const Dataset& ds, const ClusterConfig& cfg) {
    // Plain loop first; the feature-weight step only reshapes the final
    // memberships (inside engine's closing recompute we must merge once).
    ClusterConfig plain = cfg;
    ClusterResult res = engine(ds, plain, /*with_second_step=*/false);
    PartitionMatrix merged = res.pm;
    for (std::size_t i = 0; i < merged.c(); ++i)
        for (std::size_t j = 0; j < merged.n(); ++j) {
            const double u2 = second_step_value(ds, res.centroids, i, j, res.pm(i, j));
            if (u2 > merged(i, j)) merged.set(i, j, u2);
        }
    res.pm = std::move(merged);
    res.objective = objective_value(ds, res.pm, res.centroids, cfg.m, cfg.distance);
    return res;
}

ClusterResult run_bfpm(const Dataset& ds, const ClusterConfig& cfg) {
    if (cfg.distance.family != DistanceSpec::Family::lp || cfg.distance.p != 2.0)
        throw ConfigError("bfpm runs on plain Euclidean distance (lp, p = 2); "
                          "use bfpm_wfd for weighted runs");
    return engine(ds, cfg, /*with_second_step=*/false);
}

ClusterResult run_bfpm_wfd(const Dataset& ds, const ClusterConfig& cfg) {
    if (cfg.distance.family != DistanceSpec::Family::wfd)
        throw ConfigError("bfpm_wfd requires the wfd distance family");
    return engine(ds, cfg, /*with_second_step=*/false);
}

ClusterResult run_clustering(const Dataset& ds, const ClusterConfig& cfg) {
    switch (cfg.algorithm) {
    case ClusterConfig::Algorithm::fpm: return run_fpm(ds, cfg);
    case ClusterConfig::Algorithm::fpm1: return run_fpm1(ds, cfg);
    case ClusterConfig::Algorithm::fpm2: return run_fpm2(ds, cfg);
    case ClusterConfig::Algorithm::bfpm: return run_bfpm(ds, cfg);
    case ClusterConfig::Algorithm::bfpm_wfd: return run_bfpm_wfd(ds, cfg);
    }
    throw ConfigError("unknown algorithm");
}

} // namespace bfpm
