#include "dhlpp/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dhlpp/rng.hpp"
#include "json.hpp"

namespace dhlpp::harness {

void ExperimentConfig::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("config: p must be in (0,1)");
    if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("config: u must be in (0,1]");
    if (samples < 100) throw std::invalid_argument("config: samples must be >= 100");
    for (size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("config: N-grid must be strictly increasing");
    for (long n : n_grid)
        if (n < 1) throw std::invalid_argument("config: N-grid entries must be positive");
    if (!(alpha > 2.0 / 3.0 && alpha <= 1.0) && experiment == "clt")
        throw std::invalid_argument("config: alpha must lie in (2/3, 1]");
    if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("config: tau must lie in [0,1)");
    if (m_fixed < 1 || n_fixed < 1) throw std::invalid_argument("config: fixed rectangle must be >= 1x1");
    if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
    if (format != "json" && format != "csv") throw std::invalid_argument("config: format must be json or csv");
}

bool ExperimentResult::all_pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

bool ExperimentResult::any_exact_violation() const {
    for (const auto& v : verdicts)
        if (v.exact && !v.pass) return true;
    return false;
}

int ExperimentResult::exit_code() const {
    if (any_exact_violation()) return 2;
    if (!all_pass()) return 1;
    return 0;
}

void parallel_samples(long count, int workers, const std::function<void(long)>& f) {
    int w = workers > 0 ? workers : int(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    if (w == 1 || count < 2 * w) {
        for (long k = 0; k < count; ++k) f(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    std::exception_ptr error;
    std::mutex error_mu;
    for (int t = 0; t < w; ++t) {
        const long lo = count * t / w;
        const long hi = count * (t + 1) / w;
        pool.emplace_back([&, lo, hi] {
            try {
                for (long k = lo; k < hi; ++k) f(k);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

uint64_t retry_seed(uint64_t seed) {
    uint64_t s = seed ^ 0xC2B2AE3D27D4EB4FULL;
    return splitmix64(s);
}

namespace {

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["experiment"] = c.experiment;
    j["p"] = c.p;
    j["u"] = c.u;
    j["n_grid"] = c.n_grid;
    j["samples"] = c.samples;
    j["c"] = c.c;
    j["alpha"] = c.alpha;
    j["tau"] = c.tau;
    j["r_grid"] = c.r_grid;
    j["b_grid"] = c.b_grid;
    j["delta_grid"] = c.delta_grid;
    j["m_fixed"] = c.m_fixed;
    j["n_fixed"] = c.n_fixed;
    j["x_dir"] = c.x_dir;
    j["y_dir"] = c.y_dir;
    j["r1"] = c.r1;
    j["r2"] = c.r2;
    j["seed"] = c.seed;
    return j;
}

}  // namespace

std::string to_json_string(const ExperimentResult& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["experiment"] = r.experiment;
    j["config"] = config_json(r.config);
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json jr;
        for (const auto& [k, v] : row.cols) jr[k] = v;
        j["rows"].push_back(jr);
    }
    j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : r.verdicts) {
        nlohmann::ordered_json jv;
        jv["name"] = v.name;
        jv["pass"] = v.pass;
        jv["exact"] = v.exact;
        jv["statistic"] = v.statistic;
        jv["comparator"] = v.comparator;
        if (v.comparator == "in") {
            jv["range"] = {v.range_lo, v.range_hi};
        } else {
            jv["threshold"] = v.threshold;
        }
        jv["samples"] = v.samples;
        jv["seed"] = v.seed;
        jv["attempts"] = v.attempts;
        if (!v.note.empty()) jv["note"] = v.note;
        j["verdicts"].push_back(jv);
    }
    j["meta"] = {{"library", "dhlpp"}, {"version", "1.0.0"}, {"seed", r.config.seed}};
    return j.dump(2) + "\n";
}

std::string to_csv_string(const ExperimentResult& r) {
    std::string out;
    if (r.rows.empty()) return out;
    const auto& head = r.rows.front().cols;
    for (size_t i = 0; i < head.size(); ++i) {
        out += head[i].first;
        out += (i + 1 < head.size()) ? "," : ",seed\n";
    }
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.cols.size(); ++i) {
            const double v = row.cols[i].second;
            if (v == double((long long)(v)) && std::abs(v) < 9e15) {
                out += std::to_string((long long)(v));
            } else {
                out += fmt_full(v);
            }
            out += ",";
        }
        out += std::to_string(r.config.seed);
        out += "\n";
    }
    return out;
}

void write_result(const ExperimentResult& r, const std::string& path, const std::string& format) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << (format == "csv" ? to_csv_string(r) : to_json_string(r));
}

ExperimentConfig default_config(const std::string& experiment) {
    ExperimentConfig c;
    c.experiment = experiment;
    if (experiment == "variance-scan") {
        c.n_grid = {64, 128, 256, 512, 1024};
        c.samples = 10000;
    } else if (experiment == "identity") {
        c.samples = 100000;
    } else if (experiment == "burke") {
        c.samples = 100000;
    } else if (experiment == "clt") {
        c.n_grid = {64, 128, 256, 512};
        c.samples = 5000;
    } else if (experiment == "flat-edge") {
        c.n_grid = {100, 200, 400};
        c.samples = 10000;
    } else if (experiment == "exit-tails") {
        c.n_grid = {128, 256, 512, 1024};
        c.samples = 20000;
    } else if (experiment == "path-fluct") {
        c.n_grid = {128, 256, 512, 1024};
        c.samples = 4000;
    } else if (experiment == "coupling") {
        c.samples = 1000;
    } else if (experiment == "shape-lln") {
        c.n_grid = {512};
        c.samples = 2000;
    } else if (experiment == "oracle-selftest") {
        c.samples = 200;
    } else {
        throw std::invalid_argument("unknown experiment: " + experiment);
    }
    return c;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::string& e = cfg.experiment;
    if (e == "variance-scan") return run_variance_scan(cfg);
    if (e == "identity") return run_identity_check(cfg);
    if (e == "burke") return run_burke_suite(cfg);
    if (e == "clt") return run_clt(cfg);
    if (e == "flat-edge") return run_flat_edge(cfg);
    if (e == "exit-tails") return run_exit_tails(cfg);
    if (e == "path-fluct") return run_path_fluct(cfg);
    if (e == "coupling") return run_coupling_monotonicity(cfg);
    if (e == "shape-lln") return run_shape_lln(cfg);
    if (e == "oracle-selftest") return run_oracle_selftest(cfg);
    throw std::invalid_argument("unknown experiment: " + e);
}

}  // namespace dhlpp::harness
