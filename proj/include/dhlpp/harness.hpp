#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dhlpp/stats.hpp"

namespace dhlpp::harness {

struct ExperimentConfig {
    std::string experiment;
    double p = 0.5;
    double u = 0.5;
    std::vector<long> n_grid;        // scan sizes N
    long samples = 10000;            // per grid point
    double c = -1.0;                 // off-characteristic offset coefficient
    double alpha = 0.9;              // off-characteristic exponent, (2/3, 1]
    double tau = 0.5;                // path-fluctuation level
    std::vector<double> r_grid = {1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> b_grid = {0.5, 0.75, 1.0, 1.5, 2.0};
    std::vector<double> delta_grid = {0.4, 0.2, 0.1};
    long m_fixed = 64;               // fixed rectangle (identity, burke, coupling)
    long n_fixed = 64;
    double x_dir = 1.0;              // macroscopic direction (flat edge, shape)
    double y_dir = 0.3;
    double r1 = 0.4;                 // coupling comparison parameters
    double r2 = 0.6;
    uint64_t seed = 20250810;
    int workers = 0;                 // 0 = hardware concurrency
    std::string out_path;
    std::string format = "json";

    void validate() const;
};

struct Verdict {
    std::string name;
    bool pass = false;
    bool exact = false;  // exact invariant (exit code 2) vs statistical (exit code 1)
    double statistic = 0.0;
    double threshold = 0.0;
    std::string comparator;  // "<=", ">=", "in", "==" relative to threshold/range
    double range_lo = 0.0, range_hi = 0.0;
    long samples = 0;
    uint64_t seed = 0;
    int attempts = 1;
    std::string note;
};

struct Row {
    std::vector<std::pair<std::string, double>> cols;
    void add(const std::string& k, double v) { cols.emplace_back(k, v); }
};

struct ExperimentResult {
    std::string experiment;
    ExperimentConfig config;
    std::vector<Row> rows;
    std::vector<Verdict> verdicts;
    double wall_seconds = 0.0;  // console only, never serialized

    bool all_pass() const;
    bool any_exact_violation() const;
    // 0 pass, 1 statistical failure (after retry), 2 exact violation.
    int exit_code() const;
};

// Contiguous index sharding over a worker pool; f(index) must only touch
// index-owned state. Aggregation stays with the caller, in index order.
void parallel_samples(long count, int workers, const std::function<void(long)>& f);

uint64_t retry_seed(uint64_t seed);

// Runners. Each is bit-reproducible given (seed, config) at any worker count.
ExperimentResult run_variance_scan(const ExperimentConfig& cfg);
ExperimentResult run_identity_check(const ExperimentConfig& cfg);
ExperimentResult run_burke_suite(const ExperimentConfig& cfg);
ExperimentResult run_clt(const ExperimentConfig& cfg);
ExperimentResult run_flat_edge(const ExperimentConfig& cfg);
ExperimentResult run_exit_tails(const ExperimentConfig& cfg);
ExperimentResult run_path_fluct(const ExperimentConfig& cfg);
ExperimentResult run_coupling_monotonicity(const ExperimentConfig& cfg);
ExperimentResult run_shape_lln(const ExperimentConfig& cfg);
ExperimentResult run_oracle_selftest(const ExperimentConfig& cfg);

ExperimentConfig default_config(const std::string& experiment);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Serialization. JSON carries a schema version, config echo, rows and
// verdicts; CSV is one row per grid point. Output is byte-stable across
// worker counts (no timing data is written).
std::string to_json_string(const ExperimentResult& r);
std::string to_csv_string(const ExperimentResult& r);
void write_result(const ExperimentResult& r, const std::string& path, const std::string& format);

}  // namespace dhlpp::harness
