#pragma once

#include <optional>
#include <vector>

#include "bfpm/dataset.hpp"
#include "bfpm/membership.hpp"

namespace bfpm {

/// Nearest-prototype classifier state: a labeled, normalized training set
/// plus optional per-feature weights (empty = all ones).
struct ClassifierModel {
    Dataset train;
    std::vector<double> feature_weights;
};

/// Validates and packages a training set. Throws ConfigError when train is
/// unlabeled or not normalized, when a class id has no training objects, or
/// when the weight vector length disagrees with the feature count.
ClassifierModel make_classifier(Dataset train,
                                std::vector<double> feature_weights = {});

struct ClassifyResult {
    PartitionMatrix pm;      ///< class memberships, classes x test objects
    std::vector<int> predicted; ///< argmax class per object, ties to lowest id
};

/// Membership-based classification. For test object x and class i, with
/// delta'_i the smallest squared Euclidean distance from x to a training
/// object of class i and delta''_i the smallest weighted squared distance
/// divided by d:
///
///   u'_i  = clamp(1 - delta'_i / d, 0, 1)
///   u''_i = clamp(1 - delta''_i,    0, 1)
///   u_i   = (u'_i + u''_i) / 2
///
/// With unit weights u'' equals u', and the prediction reduces to the
/// nearest neighbor's class.
ClassifyResult bfpcm_classify(const ClassifierModel& model, const Dataset& test);

/// One-vs-rest confusion counts for a chosen positive class.
struct ConfusionMatrix {
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    std::size_t positives() const { return tp + fn; }
    std::size_t negatives() const { return fp + tn; }
    std::size_t total() const { return tp + fn + fp + tn; }
};

ConfusionMatrix confusion(const std::vector<int>& predicted,
                          const std::vector<int>& truth, int positive_class);

/// Ratio metrics from a confusion matrix. A ratio whose denominator is zero
/// is reported as an absent optional, never as NaN. Accuracy is the
/// class-prior weighted sum of sensitivity and specificity, which equals
/// (tp + tn) / total.
struct Metrics {
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> precision;
    std::optional<double> accuracy;
};

Metrics metrics(const ConfusionMatrix& cm);

/// The six error measures between a truth vector y and prediction y'.
/// absolute and squared are per-element; the means divide by the length;
/// the relative forms divide by the spread of y around its own mean and are
/// absent when that spread is zero (constant truth vector).
struct ErrorMeasures {
    std::vector<double> absolute;
    std::vector<double> squared;
    double mean_absolute = 0.0;
    double mean_squared = 0.0;
    std::optional<double> relative_absolute;
    std::optional<double> relative_squared;
};

ErrorMeasures error_measures(const std::vector<double>& truth,
                             const std::vector<double>& predicted);

} // namespace bfpm
