#include "bfpm/distance.hpp"

#include <cmath>
#include <cstddef>

#include "bfpm/errors.hpp"

namespace bfpm {

namespace {

// |x|^p with exact fast paths for the common exponents. Using x*x for p = 2
// keeps lp and unit-weight wfd bit-identical and is also the hot path.
inline double power_term(double x, double p) {
    if (p == 2.0) return x * x;
    if (p == 1.0) return x;
    return std::pow(x, p);
}

inline double root(double sum, double r) {
    if (r == 2.0) return std::sqrt(sum);
    if (r == 1.0) return sum;
    return std::pow(sum, 1.0 / r);
}

} // namespace

DistanceSpec DistanceSpec::minkowski(double p) {
    DistanceSpec s;
    s.p = p;
    return s;
}

DistanceSpec DistanceSpec::wfd_uniform(double weight, std::size_t d, double p) {
    DistanceSpec s;
    s.family = Family::wfd;
    s.p = p;
    s.w.assign(d, weight);
    s.w_prime.assign(d, weight);
    return s;
}

void check_spec(const DistanceSpec& spec, std::size_t d) {
    if (!(spec.p >= 1.0)) throw ConfigError("distance: p must be >= 1");
    if (!(spec.effective_r() >= 1.0)) throw ConfigError("distance: r must be >= 1");
    if (spec.family == DistanceSpec::Family::lp) {
        if (!spec.w.empty() || !spec.w_prime.empty() || !spec.w_priority.empty())
            throw ConfigError("distance: lp takes no weights");
        return;
    }
    auto check_len = [d](const std::vector<double>& v, const char* name) {
        if (!v.empty() && v.size() != d)
            throw ConfigError(std::string("distance: ") + name +
                              " length does not match feature count");
    };
    check_len(spec.w, "w");
    check_len(spec.w_prime, "w'");
    if (spec.family == DistanceSpec::Family::pwfd) {
        check_len(spec.w_priority, "w''");
        for (double v : spec.w_priority)
            if (!(v > 0.0)) throw ConfigError("distance: priorities must be > 0");
    } else if (!spec.w_priority.empty()) {
        throw ConfigError("distance: priorities are only valid for pwfd");
    }
}

double distance(const double* a, const double* b, std::size_t d,
                const DistanceSpec& spec) {
    check_spec(spec, d);
    const double p = spec.p;
    double sum = 0.0;
    switch (spec.family) {
    case DistanceSpec::Family::lp:
        for (std::size_t f = 0; f < d; ++f)
            sum += power_term(std::fabs(a[f] - b[f]), p);
        return root(sum, p);
    case DistanceSpec::Family::wfd:
        for (std::size_t f = 0; f < d; ++f) {
            const double wa = spec.w.empty() ? a[f] : spec.w[f] * a[f];
            const double wb = spec.w_prime.empty() ? b[f] : spec.w_prime[f] * b[f];
            sum += power_term(std::fabs(wa - wb), p);
        }
        return root(sum, spec.effective_r());
    case DistanceSpec::Family::pwfd:
        for (std::size_t f = 0; f < d; ++f) {
            const double wa = spec.w.empty() ? a[f] : spec.w[f] * a[f];
            const double wb = spec.w_prime.empty() ? b[f] : spec.w_prime[f] * b[f];
            const double base = spec.w_priority.empty()
                                    ? std::fabs(wa - wb)
                                    : std::fabs(wa - wb) / spec.w_priority[f];
            sum += power_term(base, p);
        }
        return root(sum, spec.effective_r());
    }
    throw ConfigError("distance: unknown family");
}

double distance(const std::vector<double>& a, const std::vector<double>& b,
                const DistanceSpec& spec) {
    if (a.size() != b.size())
        throw ConfigError("distance: vectors have different lengths");
    return distance(a.data(), b.data(), a.size(), spec);
}

MeanVariance mean_variance(const std::vector<double>& x) {
    if (x.empty()) throw ConfigError("mean_variance: empty vector");
    MeanVariance mv;
    for (double v : x) mv.mean += v;
    mv.mean /= static_cast<double>(x.size());
    for (double v : x) mv.variance += (v - mv.mean) * (v - mv.mean);
    mv.variance /= static_cast<double>(x.size());
    return mv;
}

bool DominantReport::any() const {
    for (bool f : flags)
        if (f) return true;
    return false;
}

std::vector<std::size_t> DominantReport::flagged() const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < flags.size(); ++f)
        if (flags[f]) out.push_back(f);
    return out;
}

DominantReport detect_dominant(const std::vector<double>& x, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("detect_dominant: lambda must be > 0");
    if (x.size() < 2)
        throw ConfigError("detect_dominant: needs at least two features");
    MeanVariance mv = mean_variance(x);
    DominantReport rep;
    rep.mean = mv.mean;
    rep.variance = mv.variance;
    rep.flags.reserve(x.size());
    for (double v : x) {
        const bool outlying = std::fabs(v - mv.mean) > lambda * mv.variance;
        const bool oversized = std::fabs(v) > lambda * std::fabs(mv.mean);
        rep.flags.push_back(outlying || oversized);
    }
    return rep;
}

} // namespace bfpm
