#include "bfpm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bfpm/errors.hpp"

namespace bfpm {

namespace {

double sq_euclid(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t f = 0; f < d; ++f) {
        const double delta = a[f] - b[f];
        s += delta * delta;
    }
    return s;
}

void require_match(const PartitionMatrix& pm, const Dataset& ds) {
    if (pm.n() != ds.n())
        throw ConfigError("analysis: partition and dataset sizes differ");
}

} // namespace

double v_pc(const PartitionMatrix& pm) {
    if (pm.n() == 0) throw ConfigError("v_pc: empty partition");
    double s = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t j = 0; j < pm.n(); ++j) s += pm(i, j) * pm(i, j);
    return s / static_cast<double>(pm.n());
}

double v_pe(const PartitionMatrix& pm) {
    if (pm.n() == 0) throw ConfigError("v_pe: empty partition");
    double s = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t j = 0; j < pm.n(); ++j) {
            const double u = pm(i, j);
            if (u > 0.0) s += u * std::log(u);
        }
    return -s / static_cast<double>(pm.n());
}

double v_xb(const PartitionMatrix& pm, const Dataset& ds, const Matrix& centroids) {
    require_match(pm, ds);
    if (pm.c() < 2) throw Error("v_xb: needs at least two clusters");

    double num = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t j = 0; j < pm.n(); ++j)
            num += pm(i, j) * pm(i, j) * sq_euclid(ds.X.row(j), centroids.row(i), ds.d());

    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t k = i + 1; k < pm.c(); ++k)
            min_sep = std::min(min_sep,
                               sq_euclid(centroids.row(i), centroids.row(k), ds.d()));
    if (!(min_sep > 0.0)) throw Error("v_xb: coincident centroids");
    return num / (static_cast<double>(pm.n()) * min_sep);
}

namespace {

// Members per cluster from the hardened assignment; throws on empties.
std::vector<std::vector<std::size_t>> members_by_cluster(const PartitionMatrix& pm,
                                                         const char* who) {
    std::vector<std::vector<std::size_t>> members(pm.c());
    std::vector<std::size_t> own = harden_labels(pm);
    for (std::size_t j = 0; j < pm.n(); ++j) members[own[j]].push_back(j);
    for (std::size_t i = 0; i < pm.c(); ++i)
        if (members[i].empty()) {
            std::ostringstream msg;
            msg << who << ": cluster " << i << " has no members";
            throw Error(msg.str());
        }
    return members;
}

} // namespace

double db_index(const PartitionMatrix& pm, const Dataset& ds, const Matrix& centroids) {
    require_match(pm, ds);
    if (pm.c() < 2) throw Error("db_index: needs at least two clusters");
    auto members = members_by_cluster(pm, "db_index");

    std::vector<double> e(pm.c(), 0.0);
    for (std::size_t i = 0; i < pm.c(); ++i) {
        for (std::size_t j : members[i])
            e[i] += sq_euclid(ds.X.row(j), centroids.row(i), ds.d());
        e[i] /= static_cast<double>(members[i].size());
    }

    double db = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < pm.c(); ++k) {
            if (k == i) continue;
            const double sep =
                std::sqrt(sq_euclid(centroids.row(i), centroids.row(k), ds.d()));
            if (sep == 0.0) throw Error("db_index: coincident centroids");
            worst = std::max(worst, (e[i] + e[k]) / sep);
        }
        db += worst;
    }
    return db / static_cast<double>(pm.c());
}

double cs_index(const PartitionMatrix& pm, const Dataset& ds, const Matrix& centroids) {
    require_match(pm, ds);
    if (pm.c() < 2) throw Error("cs_index: needs at least two clusters");
    auto members = members_by_cluster(pm, "cs_index");

    double num = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i) {
        double acc = 0.0;
        for (std::size_t j : members[i]) {
            double widest = 0.0;
            for (std::size_t l : members[i])
                widest = std::max(widest,
                                  std::sqrt(sq_euclid(ds.X.row(l), ds.X.row(j), ds.d())));
            acc += widest;
        }
        num += acc / static_cast<double>(members[i].size());
    }

    double den = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < pm.c(); ++k) {
            if (k == i) continue;
            nearest = std::min(nearest, std::sqrt(sq_euclid(centroids.row(i),
                                                            centroids.row(k), ds.d())));
        }
        den += nearest;
    }
    if (!(den > 0.0)) throw Error("cs_index: centroid separations sum to 0");
    return num / den;
}

GComponents g_components(const PartitionMatrix& pm, const Dataset& ds,
                         const DistanceSpec& spec) {
    require_match(pm, ds);
    const std::size_t n = pm.n(), c = pm.c();
    if (n < 2) throw Error("g_index: needs at least two objects");
    if (c < 2) throw Error("g_index: needs at least two clusters");

    // Cache squared pairwise distances; both sums walk all pairs.
    Matrix d2(n, n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const double dist = distance(ds.X.row(a), ds.X.row(b), ds.d(), spec);
            d2(a, b) = d2(b, a) = dist * dist;
        }

    std::vector<std::size_t> top = harden_labels(pm);
    GComponents g;
    for (std::size_t j1 = 0; j1 < n; ++j1) {
        const double own = pm(top[j1], j1);
        for (std::size_t j2 = 0; j2 < n; ++j2) {
            double other = 0.0; // best membership of j2 outside j1's cluster
            for (std::size_t i = 0; i < c; ++i)
                if (i != top[j1]) other = std::max(other, pm(i, j2));
            g.ds_s += d2(j1, j2) * std::min(own, other);
        }
    }
    g.ds_s /= static_cast<double>(n) * static_cast<double>(n);

    for (std::size_t j1 = 0; j1 < n; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < n; ++j2)
            for (std::size_t i = 0; i < c; ++i)
                g.cp += d2(j1, j2) * std::min(pm(i, j1), pm(i, j2));
    g.cp *= 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    return g;
}

double g_index(const PartitionMatrix& pm, const Dataset& ds,
               const DistanceSpec& spec) {
    GComponents g = g_components(pm, ds, spec);
    if (!(g.cp > 0.0))
        throw Error("g_index: compactness term is 0 (all pairwise minima vanish)");
    return g.ds_s / g.cp;
}

double ig_index(const PartitionMatrix& pm, const Dataset& ds, double y,
                const DistanceSpec& spec) {
    if (!(y > 0.0)) throw ConfigError("ig_index: y must be > 0");
    const double g = g_index(pm, ds, spec);
    if (!(g > 0.0)) throw Error("ig_index: G is 0");
    return g / std::pow(g, y);
}

namespace {

// Best one-to-one cluster->class assignment by match count (size^3
// Hungarian on the negated count matrix, padded square).
std::size_t hungarian_matches(const std::vector<std::vector<std::size_t>>& count,
                              std::size_t clusters, std::size_t classes) {
    const std::size_t s = std::max(clusters, classes);
    // cost[i][l] = -matches, 0 for padding
    std::vector<std::vector<double>> cost(s, std::vector<double>(s, 0.0));
    for (std::size_t i = 0; i < clusters; ++i)
        for (std::size_t l = 0; l < classes; ++l)
            cost[i][l] = -static_cast<double>(count[i][l]);

    // Standard potential-based assignment (rows 1..s, 0 is a sentinel).
    std::vector<double> u(s + 1, 0.0), v(s + 1, 0.0);
    std::vector<std::size_t> way(s + 1, 0), match(s + 1, 0);
    for (std::size_t i = 1; i <= s; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(s + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(s + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = std::numeric_limits<double>::infinity();
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= s; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= s; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::size_t matches = 0;
    for (std::size_t j = 1; j <= s; ++j) {
        const std::size_t i = match[j];
        if (i >= 1 && i - 1 < clusters && j - 1 < classes)
            matches += count[i - 1][j - 1];
    }
    return matches;
}

} // namespace

double clustering_accuracy(const PartitionMatrix& pm, const std::vector<int>& labels,
                           bool hungarian) {
    if (labels.size() != pm.n())
        throw ConfigError("clustering_accuracy: label count does not match objects");
    if (pm.n() == 0) throw ConfigError("clustering_accuracy: empty partition");

    int max_label = 0;
    for (int l : labels) {
        if (l < 0) throw ConfigError("clustering_accuracy: negative label");
        max_label = std::max(max_label, l);
    }
    const std::size_t classes = static_cast<std::size_t>(max_label) + 1;

    std::vector<std::size_t> own = harden_labels(pm);
    std::vector<std::vector<std::size_t>> count(
        pm.c(), std::vector<std::size_t>(classes, 0));
    for (std::size_t j = 0; j < pm.n(); ++j)
        count[own[j]][static_cast<std::size_t>(labels[j])]++;

    std::size_t matched = 0;
    if (hungarian) {
        matched = hungarian_matches(count, pm.c(), classes);
    } else {
        // Majority vote per cluster; ties resolve to the lowest class id.
        for (std::size_t i = 0; i < pm.c(); ++i) {
            std::size_t best = 0;
            for (std::size_t l = 1; l < classes; ++l)
                if (count[i][l] > count[i][best]) best = l;
            matched += count[i][best];
        }
    }
    return static_cast<double>(matched) / static_cast<double>(pm.n());
}

MutationReport mutation_report(const PartitionMatrix& pm,
                               const std::vector<double>& thresholds) {
    if (pm.c() < 2) throw ConfigError("mutation_report: needs at least two clusters");
    if (pm.n() == 0) throw ConfigError("mutation_report: empty partition");

    MutationReport rep;
    rep.own_cluster = harden_labels(pm);
    rep.own_membership.resize(pm.n());
    rep.runner_up_cluster.resize(pm.n());
    rep.runner_up_membership.resize(pm.n());
    for (std::size_t j = 0; j < pm.n(); ++j) {
        rep.own_membership[j] = pm(rep.own_cluster[j], j);
        std::size_t runner = rep.own_cluster[j] == 0 ? 1 : 0;
        for (std::size_t i = 0; i < pm.c(); ++i)
            if (i != rep.own_cluster[j] && pm(i, j) > pm(runner, j)) runner = i;
        rep.runner_up_cluster[j] = runner;
        rep.runner_up_membership[j] = pm(runner, j);
    }
    for (double th : thresholds) {
        std::size_t count = 0;
        for (double r : rep.runner_up_membership)
            if (r > th) ++count;
        rep.threshold_counts.emplace_back(th, count);
    }
    return rep;
}

std::vector<CriticalFlag> detect_critical(const PartitionMatrix& pm, double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("detect_critical: epsilon must be > 0");
    std::vector<CriticalFlag> flags;
    for (std::size_t j = 0; j < pm.n(); ++j) {
        double top = 0.0;
        for (std::size_t i = 0; i < pm.c(); ++i) top = std::max(top, pm(i, j));
        if (!(top > 0.0)) continue;
        CriticalFlag flag;
        flag.object = j;
        flag.epsilon = epsilon;
        for (std::size_t i = 0; i < pm.c(); ++i)
            if (pm(i, j) > 0.0 && top - pm(i, j) < epsilon)
                flag.clusters.push_back(i);
        if (flag.clusters.size() >= 2) flags.push_back(std::move(flag));
    }
    return flags;
}

} // namespace bfpm
