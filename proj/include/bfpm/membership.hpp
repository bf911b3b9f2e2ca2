#pragma once

#include <string>
#include <vector>

#include "bfpm/dataset.hpp"
#include "bfpm/distance.hpp"
#include "bfpm/matrix.hpp"

namespace bfpm {

/// Membership regimes, ordered by containment: every valid crisp matrix is
/// valid fuzzy, every fuzzy valid possibilistic, every possibilistic valid
/// under the bounded (bfpm) conditions.
enum class Regime { crisp, fuzzy, possibilistic, bfpm };

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& name);

/// c x n membership matrix: row i = cluster i, column j = object j.
/// Entries are clamped into [0,1] on every write.
class PartitionMatrix {
public:
    PartitionMatrix() = default;
    PartitionMatrix(std::size_t c, std::size_t n, Regime regime);
    PartitionMatrix(Matrix u, Regime regime); ///< clamps the given values

    std::size_t c() const { return u_.rows(); }
    std::size_t n() const { return u_.cols(); }
    Regime regime() const { return regime_; }
    void set_regime(Regime r) { regime_ = r; }

    double operator()(std::size_t i, std::size_t j) const { return u_(i, j); }
    void set(std::size_t i, std::size_t j, double value);

    double row_sum(std::size_t i) const;
    double col_sum(std::size_t j) const;

    const Matrix& raw() const { return u_; }

private:
    Matrix u_;
    Regime regime_ = Regime::bfpm;
};

/// Outcome of a validation: ok, or the first violated condition.
struct Validation {
    bool ok = true;
    std::string detail;
    explicit operator bool() const { return ok; }
};

/// Checks pm's values against the conditions of the given regime:
///   crisp          entries exactly 0/1, every column sums to 1,
///                  every row sum strictly inside (0, n)
///   fuzzy          entries in [0,1], column sums 1 within 1e-9,
///                  row sums strictly inside (0, n)
///   possibilistic  entries in [0,1], every column has a positive entry,
///                  row sums in (0, n]
///   bfpm           entries in [0,1], every column average in (0, 1],
///                  row sums in (0, n]
Validation validate(const PartitionMatrix& pm, Regime regime);

/// Validates pm against its own regime tag.
Validation validate(const PartitionMatrix& pm);

/// Every regime whose conditions pm's values satisfy, in chain order.
std::vector<Regime> regime_subset_check(const PartitionMatrix& pm);

/// Membership of one object in each of c clusters:
///
///   u_i = [ sum_k (d_i / d_k)^(2/(m-1)) ]^(-1/m)
///
/// where d_i is the distance from the object to centroid i. An object at
/// zero distance from a centroid takes membership 1 there, and zero-distance
/// terms are left out of the ratio sums for the remaining clusters. Results
/// are clamped to [0,1]. Every u_i is positive and at most 1; columns can
/// sum past 1, which is exactly what the bounded regime permits.
///
/// raw_exponent = true evaluates the sum with exponent +1/m instead; after
/// clamping this saturates every membership at 1. It exists so the effect of
/// the sign correction can be demonstrated, not for practical use.
///
/// Throws ConfigError for m <= 1 and Error when two centroids at distinct
/// positions are both at distance 0 (a degenerate distance, e.g. all-zero
/// feature weights).
std::vector<double> bfpm_membership(const std::vector<double>& object,
                                    const Matrix& centroids, double m,
                                    const DistanceSpec& spec = DistanceSpec(),
                                    bool raw_exponent = false);

/// Weighted-mean centroid update: v_i = sum_j u_ij^m O_j / sum_j u_ij^m.
/// Throws Error when a cluster's memberships are all zero.
Matrix update_centroids(const Dataset& ds, const PartitionMatrix& pm, double m);

/// Crisp matrix assigning each object to its highest-membership cluster;
/// ties resolve to the lowest cluster index.
PartitionMatrix harden(const PartitionMatrix& pm);

/// Hardened assignment as one cluster index per object (same tie rule).
std::vector<std::size_t> harden_labels(const PartitionMatrix& pm);

} // namespace bfpm
