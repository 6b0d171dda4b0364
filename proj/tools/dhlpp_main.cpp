// Command-line driver for the discrete Hammersley experiments.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dhlpp/harness.hpp"

namespace {

std::vector<long> parse_grid(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stol(tok));
    }
    return out;
}

void print_summary(const dhlpp::harness::ExperimentResult& r) {
    std::printf("experiment: %s\n", r.experiment.c_str());
    for (const auto& v : r.verdicts) {
        std::string bound;
        if (v.comparator == "in") {
            char buf[64];
            std::snprintf(buf, sizeof buf, "in [%g, %g]", v.range_lo, v.range_hi);
            bound = buf;
        } else {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s %g", v.comparator.c_str(), v.threshold);
            bound = buf;
        }
        std::printf("  [%s] %-36s statistic=%-12.6g %s%s%s\n", v.pass ? "pass" : "FAIL",
                    v.name.c_str(), v.statistic, bound.c_str(),
                    v.attempts > 1 ? " (retried)" : "", v.note.empty() ? "" : (" — " + v.note).c_str());
    }
    std::printf("  wall time: %.2f s\n", r.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Hammersley last-passage percolation: invariant-boundary experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {
        "variance-scan", "identity",  "burke",    "clt",       "flat-edge",
        "exit-tails",    "path-fluct", "coupling", "shape-lln", "oracle-selftest"};

    double p = -1, u = -1, c = -1e300, alpha = -1, tau = -1;
    long samples = -1, m_fixed = -1, n_fixed = -1;
    std::string n_grid_str, out_path, format = "json";
    uint64_t seed = 0;
    bool seed_set = false;
    int workers = -1;

    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--p", p, "bulk Bernoulli parameter");
        sub->add_option("--u", u, "boundary parameter");
        sub->add_option("--seed", seed, "master seed")->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--samples", samples, "samples per grid point");
        sub->add_option("--n-grid", n_grid_str, "comma-separated N grid");
        sub->add_option("--c", c, "off-characteristic offset coefficient");
        sub->add_option("--alpha", alpha, "off-characteristic exponent");
        sub->add_option("--tau", tau, "path-fluctuation level");
        sub->add_option("--m", m_fixed, "fixed rectangle width");
        sub->add_option("--n", n_fixed, "fixed rectangle height");
        sub->add_option("--workers", workers, "worker threads (0 = hardware)");
        sub->add_option("--out", out_path, "output file path");
        sub->add_option("--format", format, "output format: csv or json");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 3 : 0;
    }

    try {
        const std::string chosen = app.get_subcommands().front()->get_name();
        auto cfg = dhlpp::harness::default_config(chosen);
        if (p > 0) cfg.p = p;
        if (u > 0) cfg.u = u;
        if (seed_set) cfg.seed = seed;
        if (samples > 0) cfg.samples = samples;
        if (!n_grid_str.empty()) cfg.n_grid = parse_grid(n_grid_str);
        if (c != -1e300) cfg.c = c;
        if (alpha > 0) cfg.alpha = alpha;
        if (tau >= 0) cfg.tau = tau;
        if (m_fixed > 0) cfg.m_fixed = m_fixed;
        if (n_fixed > 0) cfg.n_fixed = n_fixed;
        if (workers >= 0) cfg.workers = workers;
        cfg.out_path = out_path;
        cfg.format = format;
        cfg.validate();

        const auto t0 = std::chrono::steady_clock::now();
        auto result = dhlpp::harness::run_experiment(cfg);
        result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        if (!cfg.out_path.empty()) dhlpp::harness::write_result(result, cfg.out_path, cfg.format);
        print_summary(result);
        return result.exit_code();
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
