#pragma once

// Independent reference implementations for checking library results.
// Everything here is written straight from the definitions with plain loops;
// no code is shared with the library beyond basic types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bfpm/dataset.hpp"
#include "bfpm/matrix.hpp"
#include "bfpm/membership.hpp"
#include "bfpm/rng.hpp"

namespace oracle {

inline double sq_dist(const bfpm::Matrix& a, std::size_t ra, const bfpm::Matrix& b,
                      std::size_t rb) {
    double s = 0.0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        const double delta = a(ra, f) - b(rb, f);
        s += delta * delta;
    }
    return s;
}

/// Plain nearest-neighbor prediction: label of the closest training row,
/// earliest row on exact ties.
inline int nn1_predict(const bfpm::Dataset& train, const bfpm::Matrix& test,
                       std::size_t row) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < train.n(); ++j) {
        const double d = sq_dist(train.X, j, test, row);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return train.labels[best];
}

inline std::vector<std::size_t> harden(const bfpm::PartitionMatrix& pm) {
    std::vector<std::size_t> own(pm.n(), 0);
    for (std::size_t j = 0; j < pm.n(); ++j)
        for (std::size_t i = 1; i < pm.c(); ++i)
            if (pm(i, j) > pm(own[j], j)) own[j] = i;
    return own;
}

inline double xb(const bfpm::PartitionMatrix& pm, const bfpm::Matrix& X,
                 const bfpm::Matrix& cents) {
    double num = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t j = 0; j < pm.n(); ++j)
            num += pm(i, j) * pm(i, j) * sq_dist(X, j, cents, i);
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t k = 0; k < pm.c(); ++k)
            if (i != k) sep = std::min(sep, sq_dist(cents, i, cents, k));
    return num / (static_cast<double>(pm.n()) * sep);
}

inline double db(const bfpm::PartitionMatrix& pm, const bfpm::Matrix& X,
                 const bfpm::Matrix& cents) {
    const auto own = oracle::harden(pm);
    std::vector<double> e(pm.c(), 0.0);
    std::vector<std::size_t> count(pm.c(), 0);
    for (std::size_t j = 0; j < pm.n(); ++j) {
        e[own[j]] += sq_dist(X, j, cents, own[j]);
        ++count[own[j]];
    }
    for (std::size_t i = 0; i < pm.c(); ++i) e[i] /= static_cast<double>(count[i]);
    double total = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i) {
        double worst = 0.0;
        for (std::size_t k = 0; k < pm.c(); ++k)
            if (k != i)
                worst = std::max(worst,
                                 (e[i] + e[k]) / std::sqrt(sq_dist(cents, i, cents, k)));
        total += worst;
    }
    return total / static_cast<double>(pm.c());
}

inline double cs(const bfpm::PartitionMatrix& pm, const bfpm::Matrix& X,
                 const bfpm::Matrix& cents) {
    const auto own = oracle::harden(pm);
    double num = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i) {
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < pm.n(); ++j) {
            if (own[j] != i) continue;
            ++count;
            double widest = 0.0;
            for (std::size_t l = 0; l < pm.n(); ++l)
                if (own[l] == i)
                    widest = std::max(widest, std::sqrt(sq_dist(X, l, X, j)));
            acc += widest;
        }
        num += acc / static_cast<double>(count);
    }
    double den = 0.0;
    for (std::size_t i = 0; i < pm.c(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < pm.c(); ++k)
            if (k != i)
                nearest = std::min(nearest, std::sqrt(sq_dist(cents, i, cents, k)));
        den += nearest;
    }
    return num / den;
}

struct GParts {
    double ds_s = 0.0;
    double cp = 0.0;
};

/// Separation / compactness double sums over squared Euclidean distances.
inline GParts g(const bfpm::PartitionMatrix& pm, const bfpm::Matrix& X) {
    const std::size_t n = pm.n(), c = pm.c();
    const auto top = oracle::harden(pm);
    GParts parts;
    for (std::size_t j1 = 0; j1 < n; ++j1)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
            double other = 0.0;
            for (std::size_t i = 0; i < c; ++i)
                if (i != top[j1]) other = std::max(other, pm(i, j2));
            parts.ds_s += sq_dist(X, j1, X, j2) * std::min(pm(top[j1], j1), other);
        }
    parts.ds_s /= static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t j1 = 0; j1 + 1 < n; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < n; ++j2)
            for (std::size_t i = 0; i < c; ++i)
                parts.cp += sq_dist(X, j1, X, j2) * std::min(pm(i, j1), pm(i, j2));
    parts.cp *= 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    return parts;
}

inline std::vector<bool> dominant(const std::vector<double>& x, double lambda) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    std::vector<bool> flags;
    for (double v : x)
        flags.push_back(std::abs(v - mean) > lambda * var ||
                        std::abs(v) > lambda * std::abs(mean));
    return flags;
}

// ---- random instance generators -----------------------------------------

/// Random matrix with entries in (0, 1), rows x cols.
inline bfpm::Matrix random_open_matrix(bfpm::Rng& rng, std::size_t rows,
                                       std::size_t cols) {
    bfpm::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.unit_open();
    return m;
}

/// Unlabeled dataset with values already inside [0,1].
inline bfpm::Dataset random_dataset(bfpm::Rng& rng, std::size_t n, std::size_t d) {
    bfpm::Dataset ds;
    ds.X = random_open_matrix(rng, n, d);
    for (std::size_t f = 0; f < d; ++f) ds.feature_names.push_back("f" + std::to_string(f));
    ds.normalized = true;
    return ds;
}

/// Labeled dataset guaranteeing at least one object per class.
inline bfpm::Dataset random_labeled_dataset(bfpm::Rng& rng, std::size_t n,
                                            std::size_t d, std::size_t classes) {
    bfpm::Dataset ds = random_dataset(rng, n, d);
    for (std::size_t j = 0; j < n; ++j)
        ds.labels.push_back(static_cast<int>(j < classes ? j : rng.below(classes)));
    for (std::size_t cls = 0; cls < classes; ++cls)
        ds.label_names.push_back("class" + std::to_string(cls));
    return ds;
}

/// Valid matrix for the requested regime (c >= 2, n > c for crisp).
inline bfpm::PartitionMatrix random_partition(bfpm::Rng& rng, std::size_t c,
                                              std::size_t n, bfpm::Regime regime) {
    bfpm::Matrix u(c, n, 0.0);
    switch (regime) {
    case bfpm::Regime::crisp:
        // Every cluster owns at least one object; with c >= 2 no row can
        // reach a full row sum of n, so row sums stay inside (0, n).
        for (std::size_t j = 0; j < n; ++j)
            u(j < c ? j : rng.below(c), j) = 1.0;
        break;
    case bfpm::Regime::fuzzy:
        for (std::size_t j = 0; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < c; ++i) {
                u(i, j) = rng.unit_open();
                sum += u(i, j);
            }
            for (std::size_t i = 0; i < c; ++i) u(i, j) /= sum;
        }
        break;
    case bfpm::Regime::possibilistic:
    case bfpm::Regime::bfpm:
        // All entries in (0,1): column maxima positive, column averages in
        // (0,1), and row sums inside (0, n).
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < c; ++i) u(i, j) = rng.unit_open();
        break;
    }
    return bfpm::PartitionMatrix(std::move(u), regime);
}

} // namespace oracle
