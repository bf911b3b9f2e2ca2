#include "bfpm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bfpm/errors.hpp"
#include "bfpm/rng.hpp"

namespace bfpm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_double(const std::string& field, std::size_t data_row,
                    const std::string& column) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        std::ostringstream msg;
        msg << "cannot parse '" << field << "' as a number at row " << data_row
            << ", column '" << column << "'";
        throw Error(msg.str());
    }
    return value;
}

} // namespace

Dataset load_csv(const std::string& path,
                 const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw Error("'" + path + "' is empty");
    // Tolerate a UTF-8 byte order mark on the header.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<std::string> header = split_fields(line);
    std::size_t label_idx = header.size(); // sentinel: no label column
    if (label_column) {
        auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end())
            throw Error("unknown label column '" + *label_column + "' in '" + path + "'");
        label_idx = static_cast<std::size_t>(it - header.begin());
    }

    Dataset ds;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (i != label_idx) ds.feature_names.push_back(header[i]);
    const std::size_t d = ds.feature_names.size();
    if (d == 0) throw Error("'" + path + "' has no feature columns");

    std::vector<double> values;
    std::vector<std::string> raw_labels;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue; // ignore blank lines (incl. trailing)
        ++data_row;
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << "row " << data_row << " has " << fields.size()
                << " fields, expected " << header.size();
            throw Error(msg.str());
        }
        std::size_t f = 0;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_idx) {
                raw_labels.push_back(fields[i]);
            } else {
                values.push_back(parse_double(fields[i], data_row, header[i]));
                ++f;
            }
        }
        (void)f;
    }
    if (data_row == 0) throw Error("'" + path + "' has a header but no data rows");

    ds.X = Matrix(data_row, d, std::move(values));

    if (label_column) {
        ds.labels.reserve(raw_labels.size());
        for (const std::string& s : raw_labels) {
            auto it = std::find(ds.label_names.begin(), ds.label_names.end(), s);
            if (it == ds.label_names.end()) {
                ds.label_names.push_back(s);
                ds.labels.push_back(static_cast<int>(ds.label_names.size()) - 1);
            } else {
                ds.labels.push_back(static_cast<int>(it - ds.label_names.begin()));
            }
        }
    }
    return ds;
}

Dataset normalize_min_max(const Dataset& ds) {
    if (ds.n() == 0) throw ConfigError("normalize: empty dataset");
    Dataset out = ds;
    for (std::size_t f = 0; f < ds.d(); ++f) {
        double lo = ds.X(0, f), hi = ds.X(0, f);
        for (std::size_t j = 1; j < ds.n(); ++j) {
            lo = std::min(lo, ds.X(j, f));
            hi = std::max(hi, ds.X(j, f));
        }
        const double range = hi - lo;
        for (std::size_t j = 0; j < ds.n(); ++j)
            out.X(j, f) = range == 0.0 ? 0.0 : (ds.X(j, f) - lo) / range;
    }
    out.normalized = true;
    return out;
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.feature_names = ds.feature_names;
    out.label_names = ds.label_names;
    out.normalized = ds.normalized;
    out.X = Matrix(rows.size(), ds.d());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= ds.n()) throw ConfigError("subset: row index out of range");
        for (std::size_t f = 0; f < ds.d(); ++f) out.X(r, f) = ds.X(rows[r], f);
    }
    if (ds.has_labels()) {
        out.labels.reserve(rows.size());
        for (std::size_t r : rows) out.labels.push_back(ds.labels[r]);
    }
    return out;
}

SplitIndices plan_holdout(std::size_t n, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ConfigError("holdout ratio must lie in (0, 1)");
    const std::size_t train_n = static_cast<std::size_t>(ratio * static_cast<double>(n));
    if (train_n < 1 || train_n > n - 1 || n < 2)
        throw ConfigError("holdout would leave an empty train or test side");

    Rng rng(seed);
    std::vector<std::size_t> perm = rng.permutation(n);
    SplitIndices s;
    s.train.emplace_back(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(train_n));
    s.test.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(train_n), perm.end());
    std::sort(s.train[0].begin(), s.train[0].end());
    std::sort(s.test[0].begin(), s.test[0].end());
    return s;
}

SplitIndices plan_random_subsampling(std::size_t n, double ratio, std::size_t t,
                                     std::uint64_t seed) {
    if (t < 1) throw ConfigError("subsampling needs at least one round");
    SplitIndices s;
    for (std::size_t i = 0; i < t; ++i) {
        SplitIndices one = plan_holdout(n, ratio, seed + i);
        s.train.push_back(std::move(one.train[0]));
        s.test.push_back(std::move(one.test[0]));
    }
    return s;
}

SplitIndices plan_kfold(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2 || k > n) throw ConfigError("kfold requires 2 <= k <= n");
    Rng rng(seed);
    std::vector<std::size_t> perm = rng.permutation(n);

    SplitIndices s;
    const std::size_t base = n / k, extra = n % k;
    std::size_t at = 0;
    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t len = base + (i < extra ? 1 : 0);
        folds[i].assign(perm.begin() + static_cast<std::ptrdiff_t>(at),
                        perm.begin() + static_cast<std::ptrdiff_t>(at + len));
        std::sort(folds[i].begin(), folds[i].end());
        at += len;
    }
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> train;
        train.reserve(n - folds[i].size());
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) train.insert(train.end(), folds[j].begin(), folds[j].end());
        std::sort(train.begin(), train.end());
        s.train.push_back(std::move(train));
        s.test.push_back(folds[i]);
    }
    return s;
}

SplitIndices plan_bootstrap(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("bootstrap: empty dataset");
    Rng rng(seed);
    std::vector<char> drawn(n, 0);
    SplitIndices s;
    s.train.emplace_back();
    s.train[0].reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = static_cast<std::size_t>(rng.below(n));
        s.train[0].push_back(idx);
        drawn[idx] = 1;
    }
    s.test.emplace_back();
    for (std::size_t i = 0; i < n; ++i)
        if (!drawn[i]) s.test[0].push_back(i);
    return s;
}

SplitIndices make_splits(std::size_t n, const SplitPlan& plan) {
    switch (plan.kind) {
    case SplitPlan::Kind::holdout: return plan_holdout(n, plan.ratio, plan.seed);
    case SplitPlan::Kind::subsampling:
        return plan_random_subsampling(n, plan.ratio, plan.t, plan.seed);
    case SplitPlan::Kind::kfold: return plan_kfold(n, plan.k, plan.seed);
    case SplitPlan::Kind::bootstrap: return plan_bootstrap(n, plan.seed);
    }
    throw ConfigError("unknown split kind");
}

std::pair<Dataset, Dataset> split_holdout(const Dataset& ds, double ratio,
                                          std::uint64_t seed) {
    SplitIndices s = plan_holdout(ds.n(), ratio, seed);
    return {subset(ds, s.train[0]), subset(ds, s.test[0])};
}

std::vector<std::pair<Dataset, Dataset>> split_random_subsampling(
    const Dataset& ds, double ratio, std::size_t t, std::uint64_t seed) {
    SplitIndices s = plan_random_subsampling(ds.n(), ratio, t, seed);
    std::vector<std::pair<Dataset, Dataset>> out;
    out.reserve(t);
    for (std::size_t i = 0; i < s.rounds(); ++i)
        out.emplace_back(subset(ds, s.train[i]), subset(ds, s.test[i]));
    return out;
}

std::vector<std::pair<Dataset, Dataset>> split_kfold(const Dataset& ds, std::size_t k,
                                                     std::uint64_t seed) {
    SplitIndices s = plan_kfold(ds.n(), k, seed);
    std::vector<std::pair<Dataset, Dataset>> out;
    out.reserve(k);
    for (std::size_t i = 0; i < s.rounds(); ++i)
        out.emplace_back(subset(ds, s.train[i]), subset(ds, s.test[i]));
    return out;
}

std::pair<Dataset, Dataset> split_bootstrap(const Dataset& ds, std::uint64_t seed) {
    SplitIndices s = plan_bootstrap(ds.n(), seed);
    return {subset(ds, s.train[0]), subset(ds, s.test[0])};
}

} // namespace bfpm
