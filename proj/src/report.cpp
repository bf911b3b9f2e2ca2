#include "bfpm/report.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bfpm/errors.hpp"

namespace bfpm {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const DistanceSpec& spec) {
    const char* family = spec.family == DistanceSpec::Family::lp    ? "lp"
                         : spec.family == DistanceSpec::Family::wfd ? "wfd"
                                                                    : "pwfd";
    json j{{"family", family}, {"p", spec.p}, {"r", spec.effective_r()}};
    if (!spec.w.empty()) j["w"] = spec.w;
    if (!spec.w_prime.empty()) j["w_prime"] = spec.w_prime;
    if (!spec.w_priority.empty()) j["w_priority"] = spec.w_priority;
    return j;
}

json to_json(const ClusterConfig& cfg) {
    return json{{"algorithm", algorithm_name(cfg.algorithm)},
                {"c", cfg.c},
                {"m", cfg.m},
                {"epsilon", cfg.epsilon},
                {"max_iter", cfg.max_iter},
                {"seed", cfg.seed},
                {"raw_exponent", cfg.raw_exponent},
                {"distance", to_json(cfg.distance)}};
}

json to_json(const PartitionMatrix& pm) {
    return json{{"regime", regime_name(pm.regime())}, {"u", to_json(pm.raw())}};
}

PartitionMatrix partition_from_json(const json& j) {
    const Regime regime = regime_from_name(j.at("regime").get<std::string>());
    const json& rows = j.at("u");
    if (!rows.is_array() || rows.empty())
        throw Error("partition json: 'u' must be a non-empty array of rows");
    const std::size_t c = rows.size();
    const std::size_t n = rows[0].size();
    Matrix u(c, n);
    for (std::size_t i = 0; i < c; ++i) {
        if (rows[i].size() != n) throw Error("partition json: ragged rows");
        for (std::size_t col = 0; col < n; ++col) u(i, col) = rows[i][col].get<double>();
    }
    return PartitionMatrix(std::move(u), regime);
}

json to_json(const ClusterResult& res, const ClusterConfig& cfg) {
    return json{{"config", to_json(cfg)},
                {"iterations", res.iterations},
                {"converged", res.converged},
                {"objective", res.objective},
                {"events", res.events},
                {"centroids", to_json(res.centroids)},
                {"memberships", to_json(res.pm)}};
}

StoredResult stored_result_from_json(const json& j) {
    StoredResult out;
    out.pm = partition_from_json(j.at("memberships"));
    const json& rows = j.at("centroids");
    const std::size_t c = rows.size();
    const std::size_t d = c > 0 ? rows[0].size() : 0;
    out.centroids = Matrix(c, d);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t f = 0; f < d; ++f) out.centroids(i, f) = rows[i][f].get<double>();
    return out;
}

json to_json(const ConfusionMatrix& cm) {
    return json{{"tp", cm.tp}, {"fn", cm.fn}, {"fp", cm.fp}, {"tn", cm.tn}};
}

namespace {
json opt_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}
} // namespace

json to_json(const Metrics& m) {
    return json{{"sensitivity", opt_json(m.sensitivity)},
                {"specificity", opt_json(m.specificity)},
                {"precision", opt_json(m.precision)},
                {"accuracy", opt_json(m.accuracy)}};
}

json to_json(const ErrorMeasures& em) {
    return json{{"absolute", em.absolute},
                {"squared", em.squared},
                {"mean_absolute", em.mean_absolute},
                {"mean_squared", em.mean_squared},
                {"relative_absolute", opt_json(em.relative_absolute)},
                {"relative_squared", opt_json(em.relative_squared)}};
}

json to_json(const MutationReport& rep) {
    json objects = json::array();
    for (std::size_t j = 0; j < rep.own_cluster.size(); ++j)
        objects.push_back(json{{"object", j},
                               {"own_cluster", rep.own_cluster[j]},
                               {"own_membership", rep.own_membership[j]},
                               {"runner_up_cluster", rep.runner_up_cluster[j]},
                               {"runner_up_membership", rep.runner_up_membership[j]}});
    json counts = json::array();
    for (const auto& [threshold, count] : rep.threshold_counts)
        counts.push_back(json{{"threshold", threshold}, {"count", count}});
    return json{{"objects", std::move(objects)},
                {"threshold_counts", std::move(counts)}};
}

json to_json(const std::vector<CriticalFlag>& flags) {
    json arr = json::array();
    for (const CriticalFlag& f : flags)
        arr.push_back(json{{"object", f.object},
                           {"epsilon", f.epsilon},
                           {"clusters", f.clusters}});
    return arr;
}

json to_json(const SplitIndices& s) {
    json rounds = json::array();
    for (std::size_t i = 0; i < s.rounds(); ++i)
        rounds.push_back(json{{"round", i}, {"train", s.train[i]}, {"test", s.test[i]}});
    return json{{"rounds", std::move(rounds)}};
}

std::string cluster_result_csv(const ClusterResult& res) {
    std::string out = "object";
    for (std::size_t i = 0; i < res.pm.c(); ++i)
        out += ",u_" + std::to_string(i);
    out += ",cluster\n";
    std::vector<std::size_t> own = harden_labels(res.pm);
    for (std::size_t j = 0; j < res.pm.n(); ++j) {
        out += std::to_string(j);
        for (std::size_t i = 0; i < res.pm.c(); ++i)
            out += "," + format_double(res.pm(i, j));
        out += "," + std::to_string(own[j]) + "\n";
    }
    return out;
}

std::string partition_csv(const PartitionMatrix& pm) {
    std::string out;
    for (std::size_t i = 0; i < pm.c(); ++i) {
        for (std::size_t j = 0; j < pm.n(); ++j) {
            if (j) out += ",";
            out += format_double(pm(i, j));
        }
        out += "\n";
    }
    return out;
}

std::string mutation_csv(const MutationReport& rep,
                         const std::vector<CriticalFlag>* critical) {
    std::string out =
        "object,own_cluster,own_membership,runner_up_cluster,runner_up_membership\n";
    for (std::size_t j = 0; j < rep.own_cluster.size(); ++j) {
        out += std::to_string(j) + "," + std::to_string(rep.own_cluster[j]) + "," +
               format_double(rep.own_membership[j]) + "," +
               std::to_string(rep.runner_up_cluster[j]) + "," +
               format_double(rep.runner_up_membership[j]) + "\n";
    }
    for (const auto& [threshold, count] : rep.threshold_counts)
        out += "# runner_up > " + format_double(threshold) + ": " +
               std::to_string(count) + "\n";
    if (critical) {
        for (const CriticalFlag& f : *critical) {
            out += "# critical: object " + std::to_string(f.object) + " clusters";
            for (std::size_t c : f.clusters) out += " " + std::to_string(c);
            out += "\n";
        }
    }
    return out;
}

std::string split_csv(const SplitIndices& s) {
    std::string out = "round,role,index\n";
    for (std::size_t i = 0; i < s.rounds(); ++i) {
        for (std::size_t idx : s.train[i])
            out += std::to_string(i) + ",train," + std::to_string(idx) + "\n";
        for (std::size_t idx : s.test[i])
            out += std::to_string(i) + ",test," + std::to_string(idx) + "\n";
    }
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp + "'");
        out << content;
        if (!out.flush()) throw Error("write to '" + tmp + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (path)
        atomic_write(*path, content);
    else
        std::cout << content;
}

} // namespace bfpm
