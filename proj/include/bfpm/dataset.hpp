#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfpm/matrix.hpp"

namespace bfpm {

/// In-memory dataset: n objects by d features, plus optional class labels.
///
/// Labels are stored as dense 0-based ids in order of first appearance in
/// the source file; label_names maps each id back to its original string.
struct Dataset {
    Matrix X;                               ///< n x d feature matrix
    std::vector<int> labels;                ///< empty when unlabeled, else size n
    std::vector<std::string> feature_names; ///< size d
    std::vector<std::string> label_names;   ///< size = number of classes
    bool normalized = false;                ///< true after normalize_min_max

    std::size_t n() const { return X.rows(); }
    std::size_t d() const { return X.cols(); }
    bool has_labels() const { return !labels.empty(); }
    std::size_t num_classes() const { return label_names.size(); }
};

/// Loads a comma-separated file with a mandatory header row. '.' is the
/// decimal separator; fields are trimmed of surrounding ASCII whitespace;
/// quoting is not supported. When label_column names a header field, that
/// column is read as class labels (arbitrary strings) instead of a feature.
///
/// Throws Error on: missing/empty file, no data rows, ragged rows, a
/// non-numeric feature cell (message names the 1-based data row and the
/// column), or an unknown label column.
Dataset load_csv(const std::string& path,
                 const std::optional<std::string>& label_column = std::nullopt);

/// Per-feature min-max scaling: x' = (x - min) / (max - min). A constant
/// feature maps to all zeros. The result has normalized = true.
Dataset normalize_min_max(const Dataset& ds);

/// New dataset holding the given rows (duplicates allowed, order preserved).
Dataset subset(const Dataset& ds, const std::vector<std::size_t>& rows);

/// Resampling plan. kind selects the scheme; the other fields are only
/// read by the schemes that need them.
struct SplitPlan {
    enum class Kind { holdout, subsampling, kfold, bootstrap };
    Kind kind = Kind::holdout;
    double ratio = 2.0 / 3.0; ///< holdout / subsampling train fraction
    std::size_t t = 10;       ///< subsampling repetitions
    std::size_t k = 10;       ///< kfold fold count
    std::uint64_t seed = 42;
};

/// One or more train/test index pairs produced by a plan. Every scheme
/// fills one entry per round (holdout and bootstrap have a single round).
struct SplitIndices {
    std::vector<std::vector<std::size_t>> train;
    std::vector<std::vector<std::size_t>> test;
    std::size_t rounds() const { return train.size(); }
};

/// Seeded holdout: |train| = floor(ratio * n) chosen by a seeded shuffle,
/// remainder is the test side. Both sides are reported in ascending index
/// order. Throws ConfigError unless 1 <= |train| <= n - 1.
SplitIndices plan_holdout(std::size_t n, double ratio, std::uint64_t seed);

/// t independent holdouts; round i is seeded with seed + i, so t = 1
/// reproduces plan_holdout(n, ratio, seed) exactly.
SplitIndices plan_random_subsampling(std::size_t n, double ratio, std::size_t t,
                                     std::uint64_t seed);

/// Seeded k-fold cross-validation. The folds partition 0..n-1 exactly; the
/// first n mod k folds carry one extra element. Round i tests on fold i and
/// trains on the rest. Throws ConfigError unless 2 <= k <= n.
SplitIndices plan_kfold(std::size_t n, std::size_t k, std::uint64_t seed);

/// Bootstrap: train is n uniform draws with replacement (duplicates kept,
/// draw order preserved); test is every index never drawn, ascending.
SplitIndices plan_bootstrap(std::size_t n, std::uint64_t seed);

/// Dispatches on plan.kind.
SplitIndices make_splits(std::size_t n, const SplitPlan& plan);

/// Convenience wrappers returning materialized datasets.
std::pair<Dataset, Dataset> split_holdout(const Dataset& ds, double ratio,
                                          std::uint64_t seed);
std::vector<std::pair<Dataset, Dataset>> split_random_subsampling(
    const Dataset& ds, double ratio, std::size_t t, std::uint64_t seed);
std::vector<std::pair<Dataset, Dataset>> split_kfold(const Dataset& ds, std::size_t k,
                                                     std::uint64_t seed);
std::pair<Dataset, Dataset> split_bootstrap(const Dataset& ds, std::uint64_t seed);

} // namespace bfpm
