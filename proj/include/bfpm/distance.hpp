#pragma once

#include <optional>
#include <vector>

namespace bfpm {

/// Distance family selector.
///
///   lp    Minkowski: (sum_f |a_f - b_f|^p)^(1/p)
///   wfd   weighted feature distance: (sum_f |w_f a_f - w'_f b_f|^p)^(1/r)
///   pwfd  prioritized WFD: (sum_f (|w_f a_f - w'_f b_f| / w''_f)^p)^(1/r)
///
/// Empty weight vectors mean "all ones", so wfd with default weights is
/// exactly the Lp distance and pwfd with unit priorities is exactly wfd.
/// r defaults to p when unset.
struct DistanceSpec {
    enum class Family { lp, wfd, pwfd };
    Family family = Family::lp;
    double p = 2.0;
    std::optional<double> r;            ///< root exponent; p when absent
    std::vector<double> w;              ///< first-argument weights (wfd/pwfd)
    std::vector<double> w_prime;        ///< second-argument weights (wfd/pwfd)
    std::vector<double> w_priority;     ///< per-feature priorities (pwfd), > 0

    double effective_r() const { return r ? *r : p; }

    static DistanceSpec euclidean() { return DistanceSpec{}; }
    static DistanceSpec minkowski(double p);
    static DistanceSpec wfd_uniform(double weight, std::size_t d, double p = 2.0);
};

/// Checks a spec against a feature count: p, r >= 1, weight vectors either
/// empty or of length d, priorities strictly positive. Throws ConfigError.
void check_spec(const DistanceSpec& spec, std::size_t d);

/// Distance between two d-vectors under the spec. Throws ConfigError on a
/// malformed spec or mismatched vector lengths.
double distance(const std::vector<double>& a, const std::vector<double>& b,
                const DistanceSpec& spec);

/// Same, over raw pointers (used by hot loops on matrix rows).
double distance(const double* a, const double* b, std::size_t d,
                const DistanceSpec& spec);

struct MeanVariance {
    double mean = 0.0;
    double variance = 0.0; ///< population variance (divisor d)
};

/// Mean and population variance of the entries of one feature vector.
MeanVariance mean_variance(const std::vector<double>& x);

/// Dominant-feature scan of a single vector. Feature f is flagged when
///   |x_f - mean| > lambda * variance   or   |x_f| > lambda * |mean|.
struct DominantReport {
    std::vector<bool> flags; ///< one per feature
    double mean = 0.0;
    double variance = 0.0;
    bool any() const;
    std::vector<std::size_t> flagged() const;
};

DominantReport detect_dominant(const std::vector<double>& x, double lambda = 2.0);

} // namespace bfpm
