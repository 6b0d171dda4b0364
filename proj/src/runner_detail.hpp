#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dhlpp/harness.hpp"
#include "dhlpp/rng.hpp"

namespace dhlpp::harness::detail {

inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t idx = std::min(v.size() - 1, size_t(q * double(v.size())));
    return v[idx];
}

inline Verdict stat_verdict(const std::string& name, double statistic, const std::string& cmp,
                            double threshold, long samples, uint64_t seed) {
    Verdict v;
    v.name = name;
    v.statistic = statistic;
    v.comparator = cmp;
    v.threshold = threshold;
    v.samples = samples;
    v.seed = seed;
    if (cmp == "<=")
        v.pass = statistic <= threshold;
    else if (cmp == ">=")
        v.pass = statistic >= threshold;
    else if (cmp == "<")
        v.pass = statistic < threshold;
    else
        v.pass = statistic == threshold;
    return v;
}

inline Verdict range_verdict(const std::string& name, double statistic, double lo, double hi,
                             long samples, uint64_t seed) {
    Verdict v;
    v.name = name;
    v.statistic = statistic;
    v.comparator = "in";
    v.range_lo = lo;
    v.range_hi = hi;
    v.samples = samples;
    v.seed = seed;
    v.pass = statistic >= lo && statistic <= hi;
    return v;
}

inline Verdict exact_verdict(const std::string& name, long violations, long samples, uint64_t seed,
                             const std::string& note = "") {
    Verdict v;
    v.name = name;
    v.exact = true;
    v.statistic = double(violations);
    v.comparator = "==";
    v.threshold = 0.0;
    v.samples = samples;
    v.seed = seed;
    v.pass = violations == 0;
    v.note = note;
    return v;
}

// One statistical pass of an experiment: rows and verdicts at a given seed.
struct PassOutput {
    std::vector<Row> rows;
    std::vector<Verdict> verdicts;
};

// Two-seed repetition protocol: statistical gates fail only when they fail on
// the config seed and again on the derived retry seed. Rows always come from
// the config seed. Exact verdicts are never retried.
inline ExperimentResult run_with_retry(const ExperimentConfig& cfg,
                                       const std::function<PassOutput(uint64_t)>& pass) {
    ExperimentResult res;
    res.experiment = cfg.experiment;
    res.config = cfg;
    PassOutput first = pass(cfg.seed);
    bool retry = false;
    for (const auto& v : first.verdicts)
        if (!v.pass && !v.exact) retry = true;
    if (retry) {
        PassOutput second = pass(retry_seed(cfg.seed));
        for (auto& v : first.verdicts) {
            if (v.pass || v.exact) continue;
            for (const auto& w : second.verdicts) {
                if (w.name != v.name) continue;
                char buf[96];
                std::snprintf(buf, sizeof buf, "first attempt statistic=%.6g", v.statistic);
                v.attempts = 2;
                v.note = buf;
                if (w.pass) {
                    v.pass = true;
                    v.statistic = w.statistic;
                    v.seed = w.seed;
                }
            }
        }
    }
    res.rows = std::move(first.rows);
    res.verdicts = std::move(first.verdicts);
    return res;
}

// Distinct substream tag per (experiment purpose, grid point).
inline uint64_t grid_tag(const char* purpose, long n) {
    return stream_tag(purpose) ^ (0x9E3779B97F4A7C15ULL * uint64_t(n + 1));
}

}  // namespace dhlpp::harness::detail
