#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dhlpp/env.hpp"
#include "dhlpp/geometry.hpp"
#include "dhlpp/passage.hpp"
#include "dhlpp/stats.hpp"
#include "dhlpp/theory.hpp"
#include "runner_detail.hpp"

namespace dhlpp::harness {

using namespace detail;

// ---------------------------------------------------------------- clt

ExperimentResult run_clt(const ExperimentConfig& cfg) {
    if (!(cfg.alpha > 2.0 / 3.0 && cfg.alpha <= 1.0))
        throw std::invalid_argument("clt: alpha must lie in (2/3, 1]");
    if (cfg.c == 0.0) throw std::invalid_argument("clt: c must be nonzero");
    const double west = env::ell(cfg.p, cfg.u);
    auto pass = [&](uint64_t seed) {
        PassOutput out;
        std::vector<std::pair<double, double>> pts;
        std::vector<double> largest;
        long largest_N = 0;
        for (long N : cfg.n_grid) {
            const auto [m, n0] = theory::characteristic_endpoint(cfg.p, cfg.u, N);
            const long n = n0 + long(std::floor(cfg.c * std::pow(double(N), cfg.alpha)));
            if (n < 1) throw std::invalid_argument("clt: offset pushes endpoint off the lattice");
            std::vector<double> G(static_cast<size_t>(cfg.samples));
            const uint64_t tag = grid_tag("clt", N);
            parallel_samples(cfg.samples, cfg.workers, [&](long k) {
                Rng rng = substream(seed, tag, uint64_t(k));
                G[size_t(k)] =
                    double(passage::boundary_corner(cfg.p, cfg.u, west, int(m), int(n), rng).G);
            });
            const auto s = stats::summarize(G);
            Row row;
            row.add("N", double(N));
            row.add("m", double(m));
            row.add("n_offset", double(n));
            row.add("samples", double(cfg.samples));
            row.add("var_G", s.variance);
            row.add("var_over_N_alpha", s.variance / std::pow(double(N), cfg.alpha));
            out.rows.push_back(row);
            pts.emplace_back(double(N), s.variance);
            if (N == cfg.n_grid.back()) {
                largest = G;
                largest_N = N;
            }
        }
        // Standardize at the largest size and compare with the best-fit
        // centered normal.
        const auto s = stats::summarize(largest);
        std::vector<double> x(largest.size());
        const double scale = std::pow(double(largest_N), cfg.alpha / 2.0);
        for (size_t i = 0; i < largest.size(); ++i) x[i] = (largest[i] - s.mean) / scale;
        const auto xs = stats::summarize(x);
        const double sigma = std::sqrt(xs.variance);
        const double ks = stats::ks_statistic(
            x, [sigma](double t) { return stats::normal_cdf(t / sigma); });

        const double cand_plain =
            cfg.c < 0 ? cfg.u * (1 - cfg.u) : west * (1 - west);
        Row lim;
        lim.add("N", double(largest_N));
        lim.add("ks_to_normal", ks);
        lim.add("empirical_limit_var", xs.variance);
        lim.add("candidate_var_no_c", cand_plain);
        lim.add("candidate_var_with_c", std::fabs(cfg.c) * cand_plain);
        out.rows.push_back(lim);

        out.verdicts.push_back(stat_verdict("ks-standardized-vs-normal", ks, "<", 0.05,
                                            cfg.samples, seed));
        const auto fit = stats::loglog_slope(pts);
        out.verdicts.push_back(
            range_verdict("variance-vs-N-slope", fit.slope, 0.80, 1.00, cfg.samples, seed));
        return out;
    };
    return run_with_retry(cfg, pass);
}

// ---------------------------------------------------------------- flat edge

ExperimentResult run_flat_edge(const ExperimentConfig& cfg) {
    double xr = cfg.x_dir, yr = cfg.y_dir;
    if (!(xr > 0.0 && yr > 0.0)) throw std::invalid_argument("flat-edge: direction must be positive");
    if (yr / xr > 1.0 / cfg.p) std::swap(xr, yr);  // transpose symmetry
    if (!(yr / xr < cfg.p))
        throw std::invalid_argument("flat-edge: direction not in the flat edge (need y/x < p)");
    auto pass = [&](uint64_t seed) {
        PassOutput out;
        std::vector<double> vars, pcaps;
        long ceiling_violations = 0;
        double pcap_at_gate = -1.0;
        const long gate_N =
            std::find(cfg.n_grid.begin(), cfg.n_grid.end(), 200L) != cfg.n_grid.end()
                ? 200L
                : cfg.n_grid[cfg.n_grid.size() / 2];
        for (long N : cfg.n_grid) {
            const int m = int(std::floor(double(N) * xr));
            const int n = int(std::floor(double(N) * yr));
            if (m < 2 || n < 2) throw std::invalid_argument("flat-edge: grid size too small");
            const long cap = std::min(m, n) - 1;  // from (1,1): one collection per level above the start
            std::vector<double> G(static_cast<size_t>(cfg.samples));
            const uint64_t tag = grid_tag("flat-edge", N);
            parallel_samples(cfg.samples, cfg.workers, [&](long k) {
                Rng rng = substream(seed, tag, uint64_t(k));
                G[size_t(k)] = double(passage::bulk_corner(cfg.p, m, n, rng));
            });
            long eq = 0;
            for (double g : G) {
                if (g == double(cap)) ++eq;
                if (g > double(cap)) ++ceiling_violations;
            }
            const auto s = stats::summarize(G);
            const double pcap = double(eq) / double(cfg.samples);
            Row row;
            row.add("N", double(N));
            row.add("m", double(m));
            row.add("n", double(n));
            row.add("cap", double(cap));
            row.add("p_cap", pcap);
            row.add("mean_G", s.mean);
            row.add("var_G", s.variance);
            out.rows.push_back(row);
            vars.push_back(s.variance);
            pcaps.push_back(pcap);
            if (N == gate_N) pcap_at_gate = pcap;
        }
        out.verdicts.push_back(exact_verdict("ceiling-never-exceeded", ceiling_violations,
                                             cfg.samples * long(cfg.n_grid.size()), seed));
        out.verdicts.push_back(
            stat_verdict("p-ceiling-attained", pcap_at_gate, ">=", 0.99, cfg.samples, seed));
        bool mono = true;
        for (size_t i = 1; i < vars.size(); ++i)
            if (vars[i] > vars[i - 1]) mono = false;
        Verdict v;
        v.name = "variance-decreasing-in-N";
        v.pass = mono;
        v.statistic = vars.empty() ? 0.0 : vars.back();
        v.comparator = "<=";
        v.threshold = vars.empty() ? 0.0 : vars.front();
        v.samples = cfg.samples;
        v.seed = seed;
        out.verdicts.push_back(v);
        return out;
    };
    return run_with_retry(cfg, pass);
}

// ---------------------------------------------------------------- exit tails

ExperimentResult run_exit_tails(const ExperimentConfig& cfg) {
    auto pass = [&](uint64_t seed) {
        PassOutput out;
        std::vector<double> scaled_means;
        const long tail_N = std::find(cfg.n_grid.begin(), cfg.n_grid.end(), 512L) != cfg.n_grid.end()
                                ? 512L
                                : cfg.n_grid.back();
        std::vector<double> xi1_tail, xi2_tail;
        for (long N : cfg.n_grid) {
            const auto [m, n] = theory::characteristic_endpoint(cfg.p, cfg.u, N);
            std::vector<double> xi1(static_cast<size_t>(cfg.samples)), xi2(static_cast<size_t>(cfg.samples));
            const uint64_t tag = grid_tag("exit-tails", N);
            parallel_samples(cfg.samples, cfg.workers, [&](long k) {
                Rng rng = substream(seed, tag, uint64_t(k));
                const auto e = env::sample_environment({cfg.p, cfg.u}, int(m), int(n), rng);
                const auto f = passage::compute_passage(e);
                const auto path = geometry::downmost_maximal_path(f, e);
                const auto xp = geometry::exit_point(path);
                xi1[size_t(k)] = xp.xi_e1;
                xi2[size_t(k)] = xp.xi_e2;
            });
            const double n23 = std::pow(double(N), 2.0 / 3.0);
            double s1 = 0, s2 = 0;
            for (long k = 0; k < cfg.samples; ++k) {
                s1 += xi1[size_t(k)];
                s2 += xi2[size_t(k)];
            }
            const double mean_xi = (s1 + s2) / double(cfg.samples);
            Row row;
            row.add("N", double(N));
            row.add("m", double(m));
            row.add("n", double(n));
            row.add("samples", double(cfg.samples));
            row.add("mean_xi_scaled", mean_xi / n23);
            row.add("mean_xi_e1_scaled", s1 / double(cfg.samples) / n23);
            row.add("mean_xi_e2_scaled", s2 / double(cfg.samples) / n23);
            out.rows.push_back(row);
            scaled_means.push_back(mean_xi / n23);
            if (N == tail_N) {
                xi1_tail = xi1;
                xi2_tail = xi2;
            }
        }

        const double n23 = std::pow(double(tail_N), 2.0 / 3.0);
        std::vector<std::pair<double, double>> tail_pts;
        for (double r : cfg.r_grid) {
            long cnt = 0;
            for (double v : xi2_tail)
                if (v > r * n23) ++cnt;
            const double surv = double(cnt) / double(xi2_tail.size());
            Row row;
            row.add("tail_N", double(tail_N));
            row.add("r", r);
            row.add("survival_e2", surv);
            row.add("count", double(cnt));
            out.rows.push_back(row);
            if (cnt >= 5) tail_pts.emplace_back(r, surv);
        }
        std::vector<std::pair<double, double>> small_probs;
        for (double d : cfg.delta_grid) {
            long cnt = 0;
            for (size_t k = 0; k < xi1_tail.size(); ++k)
                if (std::max(xi1_tail[k], xi2_tail[k]) <= d * n23) ++cnt;
            Row row;
            row.add("tail_N", double(tail_N));
            row.add("delta", d);
            row.add("small_exit_prob", double(cnt) / double(xi1_tail.size()));
            out.rows.push_back(row);
            small_probs.emplace_back(d, double(cnt) / double(xi1_tail.size()));
        }
        {
            // P{xi <= delta N^{2/3}} shrinks as delta does (nested events).
            long bad = 0;
            for (size_t i = 1; i < small_probs.size(); ++i)
                if (small_probs[i].first < small_probs[i - 1].first &&
                    small_probs[i].second > small_probs[i - 1].second)
                    ++bad;
            out.verdicts.push_back(
                exact_verdict("small-exit-monotone-in-delta", bad, cfg.samples, seed));
        }

        if (tail_pts.size() >= 3) {
            const auto fit = stats::loglog_slope(tail_pts);
            out.verdicts.push_back(
                stat_verdict("exit-tail-loglog-slope", fit.slope, "<=", -2.0, cfg.samples, seed));
        } else if (tail_pts.size() == 2) {
            const double slope = std::log(tail_pts[1].second / tail_pts[0].second) /
                                 std::log(tail_pts[1].first / tail_pts[0].first);
            out.verdicts.push_back(
                stat_verdict("exit-tail-loglog-slope", slope, "<=", -2.0, cfg.samples, seed));
        } else {
            Verdict v;
            v.name = "exit-tail-loglog-slope";
            v.pass = true;
            v.statistic = -std::numeric_limits<double>::infinity();
            v.comparator = "<=";
            v.threshold = -2.0;
            v.samples = cfg.samples;
            v.seed = seed;
            v.note = "survival function vanishes inside the r grid";
            out.verdicts.push_back(v);
        }
        double lo = scaled_means[0], hi = scaled_means[0];
        for (double v : scaled_means) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.verdicts.push_back(stat_verdict("scaled-exit-mean-ratio", lo > 0 ? hi / lo : 1e99, "<",
                                            2.0, cfg.samples, seed));
        return out;
    };
    return run_with_retry(cfg, pass);
}

// ---------------------------------------------------------------- path fluctuations

ExperimentResult run_path_fluct(const ExperimentConfig& cfg) {
    auto pass = [&](uint64_t seed) {
        PassOutput out;
        std::vector<std::pair<double, double>> scale_pts;
        const long tail_N = std::find(cfg.n_grid.begin(), cfg.n_grid.end(), 512L) != cfg.n_grid.end()
                                ? 512L
                                : cfg.n_grid.back();
        std::vector<double> dev_tail, approach_tail;
        for (long N : cfg.n_grid) {
            const auto [m, n] = theory::characteristic_endpoint(cfg.p, cfg.u, N);
            const int level = int(std::floor(cfg.tau * double(n)));
            const double center = cfg.tau * double(m);
            std::vector<double> v1c(static_cast<size_t>(cfg.samples)), dev(static_cast<size_t>(cfg.samples)),
                mind(static_cast<size_t>(cfg.samples));
            const uint64_t tag = grid_tag("path-fluct", N);
            parallel_samples(cfg.samples, cfg.workers, [&](long k) {
                Rng rng = substream(seed, tag, uint64_t(k));
                const auto e = env::sample_environment({cfg.p, cfg.u}, int(m), int(n), rng);
                const auto f = passage::compute_passage(e);
                const auto path = geometry::downmost_maximal_path(f, e);
                const auto [v0, v1] = geometry::level_crossings(path, level, geometry::Axis::Horizontal);
                v1c[size_t(k)] = double(v1) - center;
                dev[size_t(k)] = std::max(center - double(v0), double(v1) - center);
                double best = 1e300;
                for (const Site& s : path.sites) {
                    const double dx = std::fabs(double(s.x) - cfg.tau * double(m));
                    const double dy = std::fabs(double(s.y) - cfg.tau * double(n));
                    best = std::min(best, std::max(dx, dy));
                }
                mind[size_t(k)] = best;
            });
            const auto s1 = stats::summarize(v1c);
            const auto sd = stats::summarize(dev);
            Row row;
            row.add("N", double(N));
            row.add("m", double(m));
            row.add("n", double(n));
            row.add("level", double(level));
            row.add("samples", double(cfg.samples));
            row.add("sd_v1", std::sqrt(s1.variance));
            row.add("mean_dev", sd.mean);
            row.add("dev_q95", quantile(dev, 0.95));
            out.rows.push_back(row);
            scale_pts.emplace_back(double(N), std::sqrt(s1.variance));
            if (N == tail_N) {
                dev_tail = dev;
                approach_tail = mind;
            }
        }

        const double n23 = std::pow(double(tail_N), 2.0 / 3.0);
        std::vector<std::pair<double, double>> tail_pts;
        for (double b : cfg.b_grid) {
            long cnt = 0;
            for (double v : dev_tail)
                if (v > b * n23) ++cnt;
            const double surv = double(cnt) / double(dev_tail.size());
            Row row;
            row.add("tail_N", double(tail_N));
            row.add("b", b);
            row.add("deviation_survival", surv);
            row.add("count", double(cnt));
            out.rows.push_back(row);
            if (cnt >= 5) tail_pts.emplace_back(b, surv);
        }
        for (double d : cfg.delta_grid) {
            long cnt = 0;
            for (double v : approach_tail)
                if (v <= d * n23) ++cnt;
            Row row;
            row.add("tail_N", double(tail_N));
            row.add("delta", d);
            row.add("approach_prob", double(cnt) / double(approach_tail.size()));
            out.rows.push_back(row);
        }

        if (scale_pts.size() >= 3) {
            const auto fit = stats::loglog_slope(scale_pts);
            out.verdicts.push_back(
                range_verdict("transversal-scale-slope", fit.slope, 0.50, 0.85, cfg.samples, seed));
        } else {
            const double slope =
                std::log(scale_pts.back().second / scale_pts.front().second) /
                std::log(scale_pts.back().first / scale_pts.front().first);
            out.verdicts.push_back(
                range_verdict("transversal-scale-slope", slope, 0.50, 0.85, cfg.samples, seed));
        }
        if (tail_pts.size() >= 3) {
            const auto tfit = stats::loglog_slope(tail_pts);
            out.verdicts.push_back(
                stat_verdict("b-tail-loglog-slope", tfit.slope, "<=", -2.0, cfg.samples, seed));
        } else if (tail_pts.size() == 2) {
            const double slope = std::log(tail_pts[1].second / tail_pts[0].second) /
                                 std::log(tail_pts[1].first / tail_pts[0].first);
            out.verdicts.push_back(
                stat_verdict("b-tail-loglog-slope", slope, "<=", -2.0, cfg.samples, seed));
        } else {
            Verdict v;
            v.name = "b-tail-loglog-slope";
            v.pass = true;
            v.statistic = -std::numeric_limits<double>::infinity();
            v.comparator = "<=";
            v.threshold = -2.0;
            v.samples = cfg.samples;
            v.seed = seed;
            v.note = "deviation survival vanishes inside the b grid";
            out.verdicts.push_back(v);
        }
        return out;
    };
    return run_with_retry(cfg, pass);
}

// ---------------------------------------------------------------- coupling / ordering

ExperimentResult run_coupling_monotonicity(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.experiment = cfg.experiment;
    res.config = cfg;
    const int m = int(cfg.m_fixed), n = int(cfg.n_fixed);
    const long S = cfg.samples;

    enum Check {
        kExitMono = 0,
        kIncrDom,
        kCmp58,
        kCmp59,
        kReversal,
        kCocycle,
        kPhiOrder,
        kNumChecks
    };
    std::vector<uint16_t> flags(size_t(S), 0);

    const uint64_t tag_eta = stream_tag("coupling-eta");
    const uint64_t tag_alpha = stream_tag("coupling-alpha");
    parallel_samples(S, cfg.workers, [&](long k) {
        uint16_t bad = 0;
        Rng rng = substream(cfg.seed, tag_eta, uint64_t(k));
        const auto eta = env::sample_uniform_field(m, n, rng);

        // Exit-point monotone coupling and increment dominance under common
        // uniforms, r1 < r2.
        const auto e1 = env::realize(eta, {cfg.p, cfg.r1});
        const auto e2 = env::realize(eta, {cfg.p, cfg.r2});
        const auto f1 = passage::compute_passage(e1);
        const auto f2 = passage::compute_passage(e2);
        {
            const auto x1 = geometry::exit_point(geometry::downmost_maximal_path(f1, e1));
            const auto x2 = geometry::exit_point(geometry::downmost_maximal_path(f2, e2));
            if (!(x1.xi_e1 <= x2.xi_e1 && x1.xi_e2 >= x2.xi_e2)) bad |= 1 << kExitMono;
        }
        for (int j = 0; j <= n && !(bad & (1 << kIncrDom)); ++j)
            for (int i = 0; i <= m; ++i) {
                if (i >= 1 && f1.I(i, j) > f2.I(i, j)) bad |= 1 << kIncrDom;
                if (j >= 1 && f1.J(i, j) < f2.J(i, j)) bad |= 1 << kIncrDom;
            }

        // Boundary-comparison inequalities around the competition interface.
        const auto e = env::realize(eta, {cfg.p, cfg.u});
        const auto f = passage::compute_passage(e);
        const auto phi = geometry::competition_interface(f);
        const auto proj = geometry::interface_projections(phi, m, n);
        auto zero_axes = [&](bool south, bool west) {
            env::Environment z(m, n, e.p(), south ? 0.0 : e.south_q(), west ? 0.0 : e.west_q(),
                               env::EnvTag::BoundaryModel);
            z.mutable_weights() = e.weights();
            auto& w = z.mutable_weights();
            if (south)
                for (int i = 1; i <= m; ++i) w(i, 0) = 0;
            if (west)
                for (int j = 1; j <= n; ++j) w(0, j) = 0;
            return z;
        };
        const auto eZ = zero_axes(true, true);
        const auto eW0 = zero_axes(false, true);
        const auto eS0 = zero_axes(true, false);
        const auto fZ = passage::compute_passage(eZ);
        const auto fW0 = passage::compute_passage(eW0);
        const auto fS0 = passage::compute_passage(eS0);
        const long vn = proj.v_of_n == geometry::kUnreached ? long(m) + 1 : proj.v_of_n;
        for (long m1 = vn + 1; m1 <= m; ++m1)
            if (fW0.G(int(m1), n) != f.G(int(m1), n)) bad |= 1 << kCmp58;
        for (long i = vn + 2; i <= m; ++i)
            if (fZ.I(int(i), n) > f.I(int(i), n)) bad |= 1 << kCmp58;
        for (long m1 = 0; m1 < std::min<long>(vn, m + 1); ++m1)
            if (fS0.G(int(m1), n) != f.G(int(m1), n)) bad |= 1 << kCmp59;
        for (long i = 1; i <= std::min<long>(vn - 1, m); ++i)
            if (fZ.I(int(i), n) < f.I(int(i), n)) bad |= 1 << kCmp59;

        // Reversal identities.
        Rng arng = substream(cfg.seed, tag_alpha, uint64_t(k));
        const auto alpha = passage::alpha_field(f, e, arng);
        const auto rev = passage::reverse(f, e, alpha);
        const auto fr = passage::compute_passage(rev.environment);
        if (rev.field.G(0, 0) != 0) bad |= 1 << kReversal;
        for (int j = 0; j <= n && !(bad & (1 << kReversal)); ++j)
            for (int i = 0; i <= m; ++i)
                if (fr.G(i, j) != rev.field.G(i, j)) {
                    bad |= 1 << kReversal;
                    break;
                }
        for (int j = 1; j <= n && !(bad & (1 << kReversal)); ++j)
            for (int i = 1; i <= m; ++i) {
                const int w = rev.environment.at(i, j);
                const int is = rev.field.I(i, j - 1);
                const int jw = rev.field.J(i - 1, j);
                const auto [io, jo] = passage::increment_step(w, jw, is);
                if (rev.field.I(i, j) != io || rev.field.J(i, j) != jo) {
                    bad |= 1 << kReversal;
                    break;
                }
            }

        // Cocycle identity.
        const auto c = passage::compass(f);
        if (c.W + c.N != f.G(m, n) || c.S + c.E != f.G(m, n)) bad |= 1 << kCocycle;

        // Interface / cluster-boundary ordering.
        const auto phitilde = geometry::cluster_boundary(f, e);
        if (!geometry::path_weakly_above(phi, phitilde)) bad |= 1 << kPhiOrder;

        flags[size_t(k)] = bad;
    });

    std::array<long, kNumChecks> violations{};
    for (long k = 0; k < S; ++k)
        for (int c = 0; c < kNumChecks; ++c)
            if (flags[size_t(k)] & (1 << c)) ++violations[size_t(c)];

    const char* names[kNumChecks] = {
        "exit-monotonicity",       "increment-dominance",  "boundary-comparison-5.8",
        "boundary-comparison-5.9", "reversal-identities",  "cocycle-identity",
        "interface-ordering"};
    for (int c = 0; c < kNumChecks; ++c)
        res.verdicts.push_back(exact_verdict(names[c], violations[size_t(c)], S, cfg.seed));
    Row row;
    row.add("samples", double(S));
    row.add("m", double(m));
    row.add("n", double(n));
    row.add("r1", cfg.r1);
    row.add("r2", cfg.r2);
    for (int c = 0; c < kNumChecks; ++c) row.add(std::string("violations_") + names[c], double(violations[size_t(c)]));
    res.rows.push_back(row);
    return res;
}

// ---------------------------------------------------------------- shape LLN

ExperimentResult run_shape_lln(const ExperimentConfig& cfg) {
    const long N = cfg.n_grid.empty() ? 512 : cfg.n_grid.back();
    auto pass = [&](uint64_t seed) {
        PassOutput out;
        const double n13 = std::pow(double(N), 1.0 / 3.0);

        // Boundary model at the characteristic endpoint.
        const auto [m, n] = theory::characteristic_endpoint(cfg.p, cfg.u, N);
        const double target_b = theory::shape_boundary(cfg.p, cfg.u, 1.0, double(n) / double(m));
        std::vector<double> dev_b(static_cast<size_t>(cfg.samples));
        const double west = env::ell(cfg.p, cfg.u);
        parallel_samples(cfg.samples, cfg.workers, [&](long k) {
            Rng rng = substream(seed, grid_tag("shape-boundary", N), uint64_t(k));
            const double G =
                double(passage::boundary_corner(cfg.p, cfg.u, west, int(m), int(n), rng).G);
            dev_b[size_t(k)] = std::fabs(G / double(N) - target_b) * n13;
        });
        long ok_b = 0;
        for (double d : dev_b)
            if (d <= 5.0) ++ok_b;

        // Bulk model along the diagonal.
        const double target_pp = theory::shape_pp(cfg.p, 1.0, 1.0);
        std::vector<double> dev_pp(static_cast<size_t>(cfg.samples));
        parallel_samples(cfg.samples, cfg.workers, [&](long k) {
            Rng rng = substream(seed, grid_tag("shape-bulk", N), uint64_t(k));
            const double G = double(passage::bulk_corner(cfg.p, int(N), int(N), rng));
            dev_pp[size_t(k)] = std::fabs(G / double(N) - target_pp) * n13;
        });
        long ok_pp = 0;
        for (double d : dev_pp)
            if (d <= 5.0) ++ok_pp;

        // Flat direction.
        const int fm = int(std::floor(double(N) * cfg.x_dir));
        const int fn = int(std::floor(double(N) * cfg.y_dir));
        const double target_flat = theory::shape_pp(cfg.p, cfg.x_dir, cfg.y_dir);
        std::vector<double> gflat(static_cast<size_t>(cfg.samples));
        parallel_samples(cfg.samples, cfg.workers, [&](long k) {
            Rng rng = substream(seed, grid_tag("shape-flat", N), uint64_t(k));
            gflat[size_t(k)] = double(passage::bulk_corner(cfg.p, fm, fn, rng)) / double(N);
        });
        const auto gf = stats::summarize(gflat);

        Row row;
        row.add("N", double(N));
        row.add("samples", double(cfg.samples));
        row.add("boundary_target", target_b);
        row.add("boundary_within_5N13", double(ok_b) / double(cfg.samples));
        row.add("boundary_dev_q50", quantile(dev_b, 0.5));
        row.add("boundary_dev_q99", quantile(dev_b, 0.99));
        row.add("bulk_target", target_pp);
        row.add("bulk_within_5N13", double(ok_pp) / double(cfg.samples));
        row.add("bulk_dev_q50", quantile(dev_pp, 0.5));
        row.add("bulk_dev_q95", quantile(dev_pp, 0.95));
        row.add("flat_target", target_flat);
        row.add("flat_mean_G_over_N", gf.mean);
        out.rows.push_back(row);

        out.verdicts.push_back(stat_verdict("boundary-lln-within-5N13",
                                            double(ok_b) / double(cfg.samples), ">=", 0.99,
                                            cfg.samples, seed));
        out.verdicts.push_back(stat_verdict("bulk-lln-within-5N13",
                                            double(ok_pp) / double(cfg.samples), ">=", 0.95,
                                            cfg.samples, seed));
        out.verdicts.push_back(stat_verdict("flat-lln-deviation",
                                            std::fabs(gf.mean - target_flat), "<", 1e-2,
                                            cfg.samples, seed));
        return out;
    };
    return run_with_retry(cfg, pass);
}

}  // namespace dhlpp::harness
