#include "bfpm/membership.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "bfpm/errors.hpp"

namespace bfpm {

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::crisp: return "crisp";
    case Regime::fuzzy: return "fuzzy";
    case Regime::possibilistic: return "possibilistic";
    case Regime::bfpm: return "bfpm";
    }
    return "?";
}

Regime regime_from_name(const std::string& name) {
    if (name == "crisp") return Regime::crisp;
    if (name == "fuzzy") return Regime::fuzzy;
    if (name == "possibilistic") return Regime::possibilistic;
    if (name == "bfpm") return Regime::bfpm;
    throw ConfigError("unknown regime '" + name + "'");
}

PartitionMatrix::PartitionMatrix(std::size_t c, std::size_t n, Regime regime)
    : u_(c, n, 0.0), regime_(regime) {}

PartitionMatrix::PartitionMatrix(Matrix u, Regime regime)
    : u_(std::move(u)), regime_(regime) {
    for (std::size_t i = 0; i < u_.rows(); ++i)
        for (std::size_t j = 0; j < u_.cols(); ++j)
            u_(i, j) = std::clamp(u_(i, j), 0.0, 1.0);
}

void PartitionMatrix::set(std::size_t i, std::size_t j, double value) {
    u_(i, j) = std::clamp(value, 0.0, 1.0);
}

double PartitionMatrix::row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n(); ++j) s += u_(i, j);
    return s;
}

double PartitionMatrix::col_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < c(); ++i) s += u_(i, j);
    return s;
}

namespace {

Validation fail(const std::string& detail) { return Validation{false, detail}; }

Validation check_range(const PartitionMatrix& pm, const char* regime) {
    for (std::size_t i = 0; i < pm.c(); ++i)
        for (std::size_t j = 0; j < pm.n(); ++j) {
            const double v = pm(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                std::ostringstream msg;
                msg << regime << ": u(" << i << "," << j << ") = " << v
                    << " outside [0,1]";
                return fail(msg.str());
            }
        }
    return {};
}

// Row sums must be positive; 'open_top' additionally forbids reaching n.
Validation check_rows(const PartitionMatrix& pm, const char* regime, bool open_top) {
    const double n = static_cast<double>(pm.n());
    for (std::size_t i = 0; i < pm.c(); ++i) {
        const double s = pm.row_sum(i);
        if (!(s > 0.0) || (open_top ? !(s < n) : !(s <= n))) {
            std::ostringstream msg;
            msg << regime << ": row " << i << " sums to " << s << ", outside (0, n"
                << (open_top ? ")" : "]");
            return fail(msg.str());
        }
    }
    return {};
}

} // namespace

Validation validate(const PartitionMatrix& pm, Regime regime) {
    if (pm.c() == 0 || pm.n() == 0) return fail("empty partition matrix");
    const char* name = regime_name(regime);

    if (Validation v = check_range(pm, name); !v.ok) return v;

    switch (regime) {
    case Regime::crisp:
        for (std::size_t i = 0; i < pm.c(); ++i)
            for (std::size_t j = 0; j < pm.n(); ++j)
                if (pm(i, j) != 0.0 && pm(i, j) != 1.0) {
                    std::ostringstream msg;
                    msg << "crisp: u(" << i << "," << j << ") = " << pm(i, j)
                        << " is neither 0 nor 1";
                    return fail(msg.str());
                }
        for (std::size_t j = 0; j < pm.n(); ++j)
            if (pm.col_sum(j) != 1.0) {
                std::ostringstream msg;
                msg << "crisp: column " << j << " sums to " << pm.col_sum(j)
                    << ", expected exactly 1";
                return fail(msg.str());
            }
        return check_rows(pm, name, /*open_top=*/true);

    case Regime::fuzzy:
        for (std::size_t j = 0; j < pm.n(); ++j) {
            const double s = pm.col_sum(j);
            if (std::fabs(s - 1.0) > 1e-9) {
                std::ostringstream msg;
                msg << "fuzzy: column " << j << " sums to " << s
                    << ", expected 1 within 1e-9";
                return fail(msg.str());
            }
        }
        return check_rows(pm, name, /*open_top=*/true);

    case Regime::possibilistic:
        for (std::size_t j = 0; j < pm.n(); ++j) {
            double mx = 0.0;
            for (std::size_t i = 0; i < pm.c(); ++i) mx = std::max(mx, pm(i, j));
            if (!(mx > 0.0)) {
                std::ostringstream msg;
                msg << "possibilistic: column " << j << " has no positive membership";
                return fail(msg.str());
            }
        }
        return check_rows(pm, name, /*open_top=*/false);

    case Regime::bfpm:
        for (std::size_t j = 0; j < pm.n(); ++j) {
            const double avg = pm.col_sum(j) / static_cast<double>(pm.c());
            if (!(avg > 0.0 && avg <= 1.0)) {
                std::ostringstream msg;
                msg << "bfpm: column " << j << " averages " << avg
                    << ", outside (0, 1]";
                return fail(msg.str());
            }
        }
        return check_rows(pm, name, /*open_top=*/false);
    }
    return fail("unknown regime");
}

Validation validate(const PartitionMatrix& pm) { return validate(pm, pm.regime()); }

std::vector<Regime> regime_subset_check(const PartitionMatrix& pm) {
    std::vector<Regime> accepted;
    for (Regime r : {Regime::crisp, Regime::fuzzy, Regime::possibilistic, Regime::bfpm})
        if (validate(pm, r).ok) accepted.push_back(r);
    return accepted;
}

std::vector<double> bfpm_membership(const std::vector<double>& object,
                                    const Matrix& centroids, double m,
                                    const DistanceSpec& spec, bool raw_exponent) {
    if (!(m > 1.0)) throw ConfigError("membership: m must be > 1");
    const std::size_t c = centroids.rows();
    if (c == 0) throw ConfigError("membership: no centroids");
    if (object.size() != centroids.cols())
        throw ConfigError("membership: object/centroid dimension mismatch");

    std::vector<double> dist(c);
    for (std::size_t i = 0; i < c; ++i)
        dist[i] = distance(object.data(), centroids.row(i), object.size(), spec);

    // A distance of 0 to two centroids that are not the same point means the
    // distance cannot separate points at all (e.g. all-zero weights).
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t k = i + 1; k < c; ++k)
            if (dist[i] == 0.0 && dist[k] == 0.0 &&
                std::memcmp(centroids.row(i), centroids.row(k),
                            centroids.cols() * sizeof(double)) != 0)
                throw Error("degenerate distance: distinct centroids both at "
                            "distance 0 from an object");

    const double ratio_exp = 2.0 / (m - 1.0);
    const double outer_exp = (raw_exponent ? 1.0 : -1.0) / m;
    std::vector<double> u(c);
    for (std::size_t i = 0; i < c; ++i) {
        if (dist[i] == 0.0) {
            u[i] = 1.0; // the object sits on this centroid
            continue;
        }
        double sum = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            if (dist[k] == 0.0) continue; // singular terms are left out
            sum += std::pow(dist[i] / dist[k], ratio_exp);
        }
        u[i] = std::clamp(std::pow(sum, outer_exp), 0.0, 1.0);
    }
    return u;
}

Matrix update_centroids(const Dataset& ds, const PartitionMatrix& pm, double m) {
    if (!(m > 1.0)) throw ConfigError("update_centroids: m must be > 1");
    if (pm.n() != ds.n())
        throw ConfigError("update_centroids: partition and dataset sizes differ");

    const std::size_t c = pm.c(), d = ds.d();
    Matrix v(c, d, 0.0);
    for (std::size_t i = 0; i < c; ++i) {
        double den = 0.0;
        for (std::size_t j = 0; j < ds.n(); ++j) {
            const double w = std::pow(pm(i, j), m);
            den += w;
            for (std::size_t f = 0; f < d; ++f) v(i, f) += w * ds.X(j, f);
        }
        if (den == 0.0) {
            std::ostringstream msg;
            msg << "cluster " << i << " has all-zero memberships";
            throw Error(msg.str());
        }
        for (std::size_t f = 0; f < d; ++f) v(i, f) /= den;
    }
    return v;
}

std::vector<std::size_t> harden_labels(const PartitionMatrix& pm) {
    std::vector<std::size_t> own(pm.n(), 0);
    for (std::size_t j = 0; j < pm.n(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pm.c(); ++i)
            if (pm(i, j) > pm(best, j)) best = i; // strict: ties keep lowest index
        if (pm(best, j) <= 0.0)
            throw Error("harden: column " + std::to_string(j) +
                        " has no positive membership");
        own[j] = best;
    }
    return own;
}

PartitionMatrix harden(const PartitionMatrix& pm) {
    PartitionMatrix out(pm.c(), pm.n(), Regime::crisp);
    std::vector<std::size_t> own = harden_labels(pm);
    for (std::size_t j = 0; j < pm.n(); ++j) out.set(own[j], j, 1.0);
    return out;
}

} // namespace bfpm
