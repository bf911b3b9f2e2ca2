#include "bfpm/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bfpm/errors.hpp"

namespace bfpm {

ClassifierModel make_classifier(Dataset train, std::vector<double> feature_weights) {
    if (!train.has_labels()) throw ConfigError("classifier: training set is unlabeled");
    if (!train.normalized)
        throw ConfigError("classifier: training set must be normalized");
    if (!feature_weights.empty() && feature_weights.size() != train.d())
        throw ConfigError("classifier: weight vector length does not match features");

    std::vector<std::size_t> per_class(train.num_classes(), 0);
    for (int label : train.labels) per_class[static_cast<std::size_t>(label)]++;
    for (std::size_t i = 0; i < per_class.size(); ++i)
        if (per_class[i] == 0) {
            std::ostringstream msg;
            msg << "classifier: class " << i << " ('" << train.label_names[i]
                << "') has no training objects";
            throw ConfigError(msg.str());
        }
    return ClassifierModel{std::move(train), std::move(feature_weights)};
}

ClassifyResult bfpcm_classify(const ClassifierModel& model, const Dataset& test) {
    const Dataset& tr = model.train;
    if (test.d() != tr.d())
        throw ConfigError("classify: train and test feature counts differ");
    if (test.n() == 0) throw ConfigError("classify: empty test set");

    const std::size_t d = tr.d();
    const std::size_t classes = tr.num_classes();
    const double dd = static_cast<double>(d);
    const std::vector<double>& w = model.feature_weights;

    ClassifyResult res;
    res.pm = PartitionMatrix(classes, test.n(), Regime::bfpm);
    res.predicted.resize(test.n());

    for (std::size_t j = 0; j < test.n(); ++j) {
        const double* x = test.X.row(j);
        std::vector<double> plain_min(classes, std::numeric_limits<double>::infinity());
        std::vector<double> weighted_min(classes,
                                         std::numeric_limits<double>::infinity());
        for (std::size_t l = 0; l < tr.n(); ++l) {
            const double* t = tr.X.row(l);
            double plain = 0.0, weighted = 0.0;
            for (std::size_t f = 0; f < d; ++f) {
                const double delta = x[f] - t[f];
                plain += delta * delta;
                weighted += delta * delta * (w.empty() ? 1.0 : w[f]);
            }
            const std::size_t cls = static_cast<std::size_t>(tr.labels[l]);
            plain_min[cls] = std::min(plain_min[cls], plain);
            weighted_min[cls] = std::min(weighted_min[cls], weighted);
        }
        std::size_t best = 0;
        double best_u = -1.0;
        for (std::size_t i = 0; i < classes; ++i) {
            const double u1 = std::clamp(1.0 - plain_min[i] / dd, 0.0, 1.0);
            const double u2 = std::clamp(1.0 - weighted_min[i] / dd, 0.0, 1.0);
            const double u = 0.5 * (u1 + u2);
            res.pm.set(i, j, u);
            if (u > best_u) { // strict: ties resolve to the lowest class id
                best_u = u;
                best = i;
            }
        }
        res.predicted[j] = static_cast<int>(best);
    }
    return res;
}

ConfusionMatrix confusion(const std::vector<int>& predicted,
                          const std::vector<int>& truth, int positive_class) {
    if (predicted.size() != truth.size())
        throw ConfigError("confusion: prediction and truth lengths differ");
    if (predicted.empty()) throw ConfigError("confusion: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool is_pos = truth[i] == positive_class;
        const bool said_pos = predicted[i] == positive_class;
        if (is_pos && said_pos) ++cm.tp;
        else if (is_pos) ++cm.fn;
        else if (said_pos) ++cm.fp;
        else ++cm.tn;
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
    Metrics m;
    const double pos = static_cast<double>(cm.positives());
    const double neg = static_cast<double>(cm.negatives());
    const double total = pos + neg;
    if (cm.positives() > 0) m.sensitivity = static_cast<double>(cm.tp) / pos;
    if (cm.negatives() > 0) m.specificity = static_cast<double>(cm.tn) / neg;
    if (cm.tp + cm.fp > 0)
        m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    if (cm.total() > 0) {
        double acc = 0.0;
        if (m.sensitivity) acc += *m.sensitivity * pos / total;
        if (m.specificity) acc += *m.specificity * neg / total;
        m.accuracy = acc;
    }
    return m;
}

ErrorMeasures error_measures(const std::vector<double>& truth,
                             const std::vector<double>& predicted) {
    if (truth.size() != predicted.size())
        throw ConfigError("error_measures: vector lengths differ");
    if (truth.empty()) throw ConfigError("error_measures: empty input");

    const std::size_t d = truth.size();
    ErrorMeasures em;
    em.absolute.reserve(d);
    em.squared.reserve(d);
    double abs_sum = 0.0, sq_sum = 0.0;
    for (std::size_t f = 0; f < d; ++f) {
        const double delta = truth[f] - predicted[f];
        em.absolute.push_back(std::fabs(delta));
        em.squared.push_back(delta * delta);
        abs_sum += std::fabs(delta);
        sq_sum += delta * delta;
    }
    em.mean_absolute = abs_sum / static_cast<double>(d);
    em.mean_squared = sq_sum / static_cast<double>(d);

    double mean = 0.0;
    for (double y : truth) mean += y;
    mean /= static_cast<double>(d);
    double spread_abs = 0.0, spread_sq = 0.0;
    for (double y : truth) {
        spread_abs += std::fabs(y - mean);
        spread_sq += (y - mean) * (y - mean);
    }
    if (spread_abs > 0.0) em.relative_absolute = abs_sum / spread_abs;
    if (spread_sq > 0.0) em.relative_squared = sq_sum / spread_sq;
    return em;
}

} // namespace bfpm
