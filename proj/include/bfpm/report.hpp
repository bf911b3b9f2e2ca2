#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bfpm/analysis.hpp"
#include "bfpm/classify.hpp"
#include "bfpm/clustering.hpp"
#include "bfpm/dataset.hpp"
#include "bfpm/distance.hpp"
#include "bfpm/membership.hpp"

namespace bfpm {

using json = nlohmann::json;

/// Shortest round-trip decimal rendering of a double (deterministic).
std::string format_double(double v);

json to_json(const Matrix& m);              ///< array of row arrays
json to_json(const DistanceSpec& spec);
json to_json(const ClusterConfig& cfg);
json to_json(const PartitionMatrix& pm);    ///< {"regime": ..., "u": [[...]]}
PartitionMatrix partition_from_json(const json& j);

/// Full result document: config echo, counters, centroids, memberships.
json to_json(const ClusterResult& res, const ClusterConfig& cfg);
/// Reads back a document produced by the above (memberships + centroids).
struct StoredResult {
    PartitionMatrix pm;
    Matrix centroids;
};
StoredResult stored_result_from_json(const json& j);

json to_json(const ConfusionMatrix& cm);
json to_json(const Metrics& m);
json to_json(const ErrorMeasures& em);
json to_json(const MutationReport& rep);
json to_json(const std::vector<CriticalFlag>& flags);
json to_json(const SplitIndices& s);

/// One row per object: index, the c membership columns, hardened cluster.
std::string cluster_result_csv(const ClusterResult& res);
/// c rows of n membership values.
std::string partition_csv(const PartitionMatrix& pm);
/// Two membership series per object; threshold counts and critical flags
/// follow as '#' comment lines.
std::string mutation_csv(const MutationReport& rep,
                         const std::vector<CriticalFlag>* critical = nullptr);
/// round,role,index rows.
std::string split_csv(const SplitIndices& s);

/// Writes content to path via a temp file + rename so readers never see a
/// partial file. Throws Error on I/O failure.
void atomic_write(const std::string& path, const std::string& content);

/// atomic_write when path is set, stdout otherwise.
void write_output(const std::optional<std::string>& path, const std::string& content);

} // namespace bfpm
