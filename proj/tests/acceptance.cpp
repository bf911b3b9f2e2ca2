// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit 0 only when
// every criterion holds and the whole suite finishes inside its budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "bfpm/analysis.hpp"
#include "bfpm/classify.hpp"
#include "bfpm/clustering.hpp"
#include "bfpm/dataset.hpp"
#include "bfpm/distance.hpp"
#include "bfpm/membership.hpp"
#include "bfpm/rng.hpp"
#include "oracles.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++failures;
}

bfpm::Dataset load_iris() {
    return bfpm::normalize_min_max(bfpm::load_csv(IRIS_CSV_PATH, "class"));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// ---- 1. regime subset chain ----------------------------------------------

void criterion_regimes() {
    const auto start = Clock::now();
    bfpm::Rng rng(101);
    std::size_t violations = 0;

    auto chain_from = [&](bfpm::Regime base, const bfpm::PartitionMatrix& pm) {
        static const bfpm::Regime chain[] = {bfpm::Regime::crisp, bfpm::Regime::fuzzy,
                                             bfpm::Regime::possibilistic,
                                             bfpm::Regime::bfpm};
        bool seen = false;
        for (bfpm::Regime r : chain) {
            if (r == base) seen = true;
            if (seen && !bfpm::validate(pm, r).ok) ++violations;
        }
    };

    for (int it = 0; it < 1000; ++it) {
        const std::size_t c = 2 + rng.below(4);      // <= 5
        const std::size_t n = c + 1 + rng.below(20 - c); // <= 20
        chain_from(bfpm::Regime::crisp,
                   oracle::random_partition(rng, c, n, bfpm::Regime::crisp));
        chain_from(bfpm::Regime::fuzzy,
                   oracle::random_partition(rng, c, n, bfpm::Regime::fuzzy));
        chain_from(bfpm::Regime::possibilistic,
                   oracle::random_partition(rng, c, n, bfpm::Regime::possibilistic));
    }

    const double elapsed = seconds_since(start);
    report(1, violations == 0 && elapsed < 5.0,
           "regime subset chain: 3x1000 random matrices, " +
               std::to_string(violations) + " violations, " + fmt(elapsed) + "s");
}

// ---- 2. membership bounds and the coincidence rule ------------------------

void criterion_membership() {
    bfpm::Rng rng(202);
    std::size_t violations = 0;
    for (int it = 0; it < 500; ++it) {
        const std::size_t c = 1 + rng.below(5), d = 1 + rng.below(4);
        bfpm::Matrix cents = oracle::random_open_matrix(rng, c, d);
        std::vector<double> obj(d);
        for (double& x : obj) x = rng.unit();
        const double m = 1.2 + rng.unit() * 2.0;

        std::vector<double> u = bfpm::bfpm_membership(obj, cents, m);
        double avg = 0.0;
        for (double v : u) {
            if (v < 0.0 || v > 1.0) ++violations;
            avg += v;
        }
        avg /= static_cast<double>(c);
        if (!(avg > 0.0 && avg <= 1.0)) ++violations;

        // drop the object onto one centroid
        const std::size_t hit = rng.below(c);
        std::vector<double> on = cents.row_copy(hit);
        u = bfpm::bfpm_membership(on, cents, m);
        if (u[hit] != 1.0) ++violations;
    }
    report(2, violations == 0,
           "membership bounds: 500 instances, column averages in (0,1], "
           "coincident objects got u=1, " +
               std::to_string(violations) + " violations");
}

// ---- 3. distance-family reductions ----------------------------------------

void criterion_distances() {
    std::size_t violations = 0;

    const std::vector<double> P{2, 2, 2, 2, 2};
    const std::vector<double> O1{4, 3, 1, 3, 5};
    const std::vector<double> O2_7{2, 2, 2, 2, 7};
    const std::vector<double> O2_11{2, 2, 2, 2, 11};
    if (bfpm::distance(P, O1, bfpm::DistanceSpec::euclidean()) != 4.0) ++violations;
    if (bfpm::distance(P, O2_7, bfpm::DistanceSpec::euclidean()) != 5.0) ++violations;
    if (bfpm::distance(P, O1, bfpm::DistanceSpec::minkowski(1)) != 8.0) ++violations;
    if (bfpm::distance(P, O2_11, bfpm::DistanceSpec::minkowski(1)) != 9.0) ++violations;

    bfpm::Rng rng(303);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 1 + rng.below(8);
        const double p = static_cast<double>(1 + rng.below(3));
        std::vector<double> a(d), b(d), w(d);
        for (std::size_t f = 0; f < d; ++f) {
            a[f] = (rng.unit() - 0.5) * 10.0;
            b[f] = (rng.unit() - 0.5) * 10.0;
            w[f] = 0.25 + rng.unit();
        }

        bfpm::DistanceSpec wfd_unit;
        wfd_unit.family = bfpm::DistanceSpec::Family::wfd;
        wfd_unit.p = p;
        wfd_unit.w = std::vector<double>(d, 1.0);
        wfd_unit.w_prime = wfd_unit.w;
        if (std::abs(bfpm::distance(a, b, wfd_unit) -
                     bfpm::distance(a, b, bfpm::DistanceSpec::minkowski(p))) > 1e-12)
            ++violations;

        bfpm::DistanceSpec wfd;
        wfd.family = bfpm::DistanceSpec::Family::wfd;
        wfd.p = p;
        wfd.w = w;
        wfd.w_prime = w;
        bfpm::DistanceSpec pwfd = wfd;
        pwfd.family = bfpm::DistanceSpec::Family::pwfd;
        pwfd.w_priority = std::vector<double>(d, 1.0);
        if (std::abs(bfpm::distance(a, b, pwfd) - bfpm::distance(a, b, wfd)) > 1e-12)
            ++violations;
    }
    report(3, violations == 0,
           "distance reductions: 4 worked values exact, 1000 unit-weight and "
           "unit-priority triples within 1e-12, " +
               std::to_string(violations) + " violations");
}

// ---- 4. iris clustering floor ---------------------------------------------

void criterion_iris(const bfpm::Dataset& iris) {
    const auto start = Clock::now();
    bfpm::ClusterConfig cfg;
    cfg.algorithm = bfpm::ClusterConfig::Algorithm::bfpm;
    cfg.c = 3;
    bfpm::ClusterResult res = bfpm::run_bfpm(iris, cfg);
    const double accuracy = bfpm::clustering_accuracy(res.pm, iris.labels);
    const double elapsed = seconds_since(start);

    report(4,
           res.converged && res.iterations <= 300 && accuracy >= 0.85 &&
               elapsed < 2.0,
           "iris bfpm c=3 m=2: converged in " + std::to_string(res.iterations) +
               " iterations, accuracy " + fmt(accuracy) +
               " (floor 0.85; published reference 0.9733), " + fmt(elapsed) + "s");
}

// ---- 5. fuzzification sweep shape ------------------------------------------

void criterion_sweep(const bfpm::Dataset& iris) {
    const std::vector<double> ms{1.2, 1.6, 1.8, 2.0};
    std::size_t wfd_wins = 0;
    bool all_ok = true;
    std::string cells;

    for (double m : ms) {
        bfpm::ClusterConfig euc;
        euc.algorithm = bfpm::ClusterConfig::Algorithm::bfpm;
        euc.c = 3;
        euc.m = m;
        bfpm::ClusterResult res_euc = bfpm::run_bfpm(iris, euc);
        const double acc_euc = bfpm::clustering_accuracy(res_euc.pm, iris.labels);

        bfpm::ClusterConfig wfd = euc;
        wfd.algorithm = bfpm::ClusterConfig::Algorithm::bfpm_wfd;
        wfd.distance =
            bfpm::DistanceSpec::wfd_uniform(1.0 / static_cast<double>(iris.d()),
                                            iris.d(), 2.0);
        bfpm::ClusterResult res_wfd = bfpm::run_bfpm_wfd(iris, wfd);
        const double acc_wfd = bfpm::clustering_accuracy(res_wfd.pm, iris.labels);

        all_ok = all_ok && res_euc.converged && res_wfd.converged &&
                 acc_euc >= 0.0 && acc_euc <= 1.0 && acc_wfd >= 0.0 && acc_wfd <= 1.0;
        if (acc_wfd >= acc_euc) ++wfd_wins;
        cells += " m=" + fmt(m) + ":" + fmt(acc_euc) + "/" + fmt(acc_wfd);
    }

    report(5, all_ok && wfd_wins >= 3,
           "fuzzification sweep (euclidean/wfd accuracies):" + cells +
               ", wfd at least as good in " + std::to_string(wfd_wins) + "/4");
}

// ---- 6. validity indices ---------------------------------------------------

void criterion_validity(const bfpm::Dataset& iris) {
    bfpm::Rng rng(606);
    std::size_t violations = 0;

    // exactness on hard partitions
    for (int it = 0; it < 50; ++it) {
        const std::size_t c = 2 + rng.below(3), n = c + 1 + rng.below(6);
        bfpm::PartitionMatrix hard =
            oracle::random_partition(rng, c, n, bfpm::Regime::crisp);
        if (bfpm::v_pc(hard) != 1.0) ++violations;
        if (bfpm::v_pe(hard) != 0.0) ++violations;
    }

    // oracle agreement on random soft instances
    int done = 0;
    while (done < 200) {
        const std::size_t c = 2 + rng.below(2), n = c + 1 + rng.below(6 - c); // n <= 6
        bfpm::Dataset ds = oracle::random_dataset(rng, n, 2);
        bfpm::Matrix cents = oracle::random_open_matrix(rng, c, 2);
        bfpm::PartitionMatrix pm =
            oracle::random_partition(rng, c, n, bfpm::Regime::bfpm);

        std::vector<std::size_t> members(c, 0);
        for (std::size_t idx : oracle::harden(pm)) members[idx]++;
        bool usable = true;
        for (std::size_t count : members) usable = usable && count > 0;
        if (!usable) continue;
        ++done;

        if (std::abs(bfpm::v_xb(pm, ds, cents) - oracle::xb(pm, ds.X, cents)) > 1e-9)
            ++violations;
        if (std::abs(bfpm::db_index(pm, ds, cents) - oracle::db(pm, ds.X, cents)) >
            1e-9)
            ++violations;
        if (std::abs(bfpm::cs_index(pm, ds, cents) - oracle::cs(pm, ds.X, cents)) >
            1e-9)
            ++violations;
        oracle::GParts want = oracle::g(pm, ds.X);
        bfpm::GComponents got = bfpm::g_components(pm, ds);
        if (std::abs(got.ds_s - want.ds_s) > 1e-9 || std::abs(got.cp - want.cp) > 1e-9)
            ++violations;
        if (want.cp > 0.0 &&
            std::abs(bfpm::g_index(pm, ds) - want.ds_s / want.cp) > 1e-9)
            ++violations;
    }

    // the bounded regime admits partition coefficients above the fuzzy cap;
    // m=2 sits exactly on the cap, so the margin is shown at m=2.4
    bfpm::ClusterConfig cfg;
    cfg.algorithm = bfpm::ClusterConfig::Algorithm::bfpm;
    cfg.c = 3;
    bfpm::ClusterResult at2 = bfpm::run_bfpm(iris, cfg);
    const double pc2 = bfpm::v_pc(at2.pm);
    cfg.m = 2.4;
    bfpm::ClusterResult soft = bfpm::run_bfpm(iris, cfg);
    const double pc_soft = bfpm::v_pc(soft.pm);

    report(6, violations == 0 && pc_soft > 1.0,
           "validity indices: hard-partition exactness, 200 oracle instances "
           "within 1e-9, iris v_pc " +
               fmt(pc_soft) + " > 1 at m=2.4 (m=2 pins the coefficient to " +
               fmt(pc2) + "; published reference 1.24), " +
               std::to_string(violations) + " violations");
}

// ---- 7. mutation counts ----------------------------------------------------

void criterion_mutation(const bfpm::Dataset& iris) {
    bfpm::ClusterConfig cfg;
    cfg.algorithm = bfpm::ClusterConfig::Algorithm::bfpm;
    cfg.c = 3;
    cfg.m = 2.4; // memberships softened enough for runner-ups to clear 0.70
    bfpm::ClusterResult res = bfpm::run_bfpm(iris, cfg);
    bfpm::MutationReport rep = bfpm::mutation_report(res.pm);

    const std::size_t c85 = rep.threshold_counts[0].second;
    const std::size_t c75 = rep.threshold_counts[1].second;
    const std::size_t c70 = rep.threshold_counts[2].second;
    report(7, c85 <= c75 && c75 <= c70 && c70 > 0,
           "mutation thresholds on the iris run (m=2.4): counts " +
               std::to_string(c85) + "/" + std::to_string(c75) + "/" +
               std::to_string(c70) +
               " for 0.85/0.75/0.70, non-increasing with count(0.70) > 0 "
               "(published run reports 25/99/99)");
}

// ---- 8. classifier oracle equivalence --------------------------------------

void criterion_classifier() {
    bfpm::Rng rng(808);
    std::size_t mismatches = 0;
    for (int it = 0; it < 200; ++it) {
        const std::size_t classes = 2 + rng.below(2);
        const std::size_t n = classes + rng.below(31 - classes); // <= 30
        const std::size_t d = 1 + rng.below(4);
        bfpm::Dataset train = oracle::random_labeled_dataset(rng, n, d, classes);
        bfpm::ClassifierModel model = bfpm::make_classifier(train);

        bfpm::Dataset test = oracle::random_dataset(rng, 5, d);
        bfpm::ClassifyResult res = bfpm::bfpcm_classify(model, test);
        for (std::size_t j = 0; j < test.n(); ++j)
            if (res.predicted[j] != oracle::nn1_predict(train, test.X, j))
                ++mismatches;
    }
    report(8, mismatches == 0,
           "classifier vs nearest-neighbor oracle: 200 instances x 5 queries, " +
               std::to_string(mismatches) + " mismatches");
}

// ---- 9. resampling ----------------------------------------------------------

void criterion_splits() {
    bfpm::Rng rng(909);
    std::size_t violations = 0;

    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 5 + rng.below(200);
        const std::size_t k = 2 + rng.below(n - 1);
        bfpm::SplitIndices s = bfpm::plan_kfold(n, k, rng.next_u64());

        std::vector<char> seen(n, 0);
        for (std::size_t i = 0; i < s.rounds(); ++i) {
            for (std::size_t idx : s.test[i]) {
                if (idx >= n || seen[idx]) ++violations;
                else seen[idx] = 1;
            }
            const std::size_t want =
                n / k + (i < n % k ? 1 : 0);
            if (s.test[i].size() != want) ++violations;
            if (s.train[i].size() + s.test[i].size() != n) ++violations;
        }
        for (char flag : seen)
            if (!flag) ++violations;
    }

    double oob_min = 1.0, oob_max = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        bfpm::SplitIndices s = bfpm::plan_bootstrap(1000, seed);
        const double oob = static_cast<double>(s.test[0].size()) / 1000.0;
        oob_min = std::min(oob_min, oob);
        oob_max = std::max(oob_max, oob);
        if (oob < 0.30 || oob > 0.44) ++violations;
    }

    report(9, violations == 0,
           "resampling: 100 k-fold partitions exact, bootstrap out-of-bag in [" +
               fmt(oob_min) + ", " + fmt(oob_max) + "] across 100 seeds, " +
               std::to_string(violations) + " violations");
}

// ---- 10. determinism and complexity -----------------------------------------

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void criterion_determinism() {
    // byte-identical CLI reruns
    const fs::path dir =
        fs::temp_directory_path() / ("bfpm_acc_" + std::to_string(getpid()));
    fs::create_directories(dir);
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    const std::string base = std::string(BFPM_CLI_PATH) + " cluster " + IRIS_CSV_PATH +
                             " --label-column class --c 3 --seed 42 --output ";
    const std::string quiet = " >/dev/null 2>&1";
    bool cli_ok = std::system((base + a + quiet).c_str()) == 0 &&
                  std::system((base + b + quiet).c_str()) == 0;
    const std::string out_a = slurp(a);
    cli_ok = cli_ok && !out_a.empty() && out_a == slurp(b);
    fs::remove_all(dir);

    // wall-time scaling at a fixed iteration count
    auto timed_run = [](std::size_t n) {
        bfpm::Rng rng(424242);
        bfpm::Dataset ds = oracle::random_dataset(rng, n, 4);
        bfpm::ClusterConfig cfg;
        cfg.algorithm = bfpm::ClusterConfig::Algorithm::bfpm;
        cfg.c = 3;
        cfg.epsilon = 1e-300; // never satisfied: exactly max_iter iterations
        cfg.max_iter = 20;
        double best = 1e18;
        for (int rep = 0; rep < 3; ++rep) {
            const auto start = Clock::now();
            bfpm::ClusterResult res = bfpm::run_bfpm(ds, cfg);
            best = std::min(best, seconds_since(start));
            if (res.iterations != 20) return -1.0;
        }
        return best;
    };
    const double t_small = timed_run(40000);
    const double t_big = timed_run(80000);
    const double ratio = t_small > 0.0 ? t_big / t_small : -1.0;
    const bool scale_ok = t_small > 0.0 && t_big > 0.0 && ratio >= 1.0 && ratio <= 3.0;

    report(10, cli_ok && scale_ok,
           "determinism and scaling: cli reruns byte-identical, doubling n "
           "scaled wall time by " +
               fmt(ratio) + "x (target 2x +/- 50%, " + fmt(t_small) + "s vs " +
               fmt(t_big) + "s)");
}

} // namespace

int main() {
    const auto start = Clock::now();
    bfpm::Dataset iris = load_iris();

    criterion_regimes();
    criterion_membership();
    criterion_distances();
    criterion_iris(iris);
    criterion_sweep(iris);
    criterion_validity(iris);
    criterion_mutation(iris);
    criterion_classifier();
    criterion_splits();
    criterion_determinism();

    const double elapsed = seconds_since(start);
    const bool in_budget = elapsed < 60.0;
    std::printf("[%s] total: %d failed criteria, %.2fs (budget 60s)\n",
                failures == 0 && in_budget ? "PASS" : "FAIL", failures, elapsed);
    return failures == 0 && in_budget ? 0 : 1;
}
