#include <array>
#include <cmath>
#include <cstdio>

#include "dhlpp/burke_exact.hpp"
#include "dhlpp/env.hpp"
#include "dhlpp/geometry.hpp"
#include "dhlpp/oracle.hpp"
#include "dhlpp/passage.hpp"
#include "dhlpp/theory.hpp"
#include "runner_detail.hpp"

namespace dhlpp::harness {

using namespace detail;

// ---------------------------------------------------------------- variance-scan

ExperimentResult run_variance_scan(const ExperimentConfig& cfg) {
    const double west = env::ell(cfg.p, cfg.u);
    auto pass = [&](uint64_t seed) {
        PassOutput out;
        std::vector<std::pair<double, double>> pts;
        bool all_zero = true;
        for (long N : cfg.n_grid) {
            const auto [m, n] = theory::characteristic_endpoint(cfg.p, cfg.u, N);
            std::vector<double> G(static_cast<size_t>(cfg.samples));
            const uint64_t tag = grid_tag("variance-scan", N);
            parallel_samples(cfg.samples, cfg.workers, [&](long k) {
                Rng rng = substream(seed, tag, uint64_t(k));
                G[size_t(k)] =
                    double(passage::boundary_corner(cfg.p, cfg.u, west, int(m), int(n), rng).G);
            });
            const auto s = stats::summarize(G);
            Row row;
            row.add("N", double(N));
            row.add("m", double(m));
            row.add("n", double(n));
            row.add("samples", double(cfg.samples));
            row.add("mean_G", s.mean);
            row.add("var_G", s.variance);
            row.add("var_stderr", s.variance_se);
            out.rows.push_back(row);
            if (s.variance > 0.0) {
                pts.emplace_back(double(N), s.variance);
                all_zero = false;
            } else {
                all_zero = all_zero && s.variance == 0.0;
            }
        }
        if (cfg.u == 1.0) {
            long nonzero = 0;
            for (const auto& r : out.rows)
                if (r.cols[5].second != 0.0) ++nonzero;
            out.verdicts.push_back(
                exact_verdict("degenerate-variance-zero", nonzero, cfg.samples, seed,
                              "u = 1: G is deterministic"));
            return out;
        }
        if (pts.size() >= 3) {
            const auto fit = stats::loglog_slope(pts);
            out.verdicts.push_back(
                range_verdict("variance-exponent-slope", fit.slope, 0.55, 0.80, cfg.samples, seed));
            out.verdicts.push_back(stat_verdict("variance-exponent-slope-stderr", fit.slope_se, "<",
                                                0.06, cfg.samples, seed));
        } else if (all_zero) {
            Verdict v;
            v.name = "variance-exponent-slope";
            v.pass = false;
            v.samples = cfg.samples;
            v.seed = seed;
            v.note = "all variances zero at u < 1";
            out.verdicts.push_back(v);
        }
        // Grids with fewer than 3 points emit the variance rows with no
        // exponent gate.
        return out;
    };
    return run_with_retry(cfg, pass);
}

// ---------------------------------------------------------------- identity

namespace {

struct IdentitySample {
    double G = 0, S = 0, Nc = 0, F = 0, Ft = 0;
};

}  // namespace

ExperimentResult run_identity_check(const ExperimentConfig& cfg) {
    const int m = int(cfg.m_fixed), n = int(cfg.n_fixed);
    const double p = cfg.p, u = cfg.u;
    auto pass = [&](uint64_t seed) {
        PassOutput out;
        const long S = cfg.samples;
        std::vector<IdentitySample> xs(static_cast<size_t>(S));
        const uint64_t tag = stream_tag("identity-env");
        parallel_samples(S, cfg.workers, [&](long k) {
            Rng rng = substream(seed, tag, uint64_t(k));
            const auto e = env::sample_environment({p, u}, m, n, rng);
            const auto f = passage::compute_passage(e);
            IdentitySample& x = xs[size_t(k)];
            x.G = double(f.G(m, n));
            x.S = double(f.G(m, 0));
            x.Nc = double(f.G(m, n) - f.G(0, n));
            const auto path = geometry::downmost_maximal_path(f, e);
            const auto xp = geometry::exit_point(path);
            for (int i = 1; i <= xp.xi_e1; ++i) x.F += 1.0 - double(e.at(i, 0));
            const auto et = env::transpose(e);
            const auto ft = passage::compute_passage(et);
            const auto patht = geometry::downmost_maximal_path(ft, et);
            const auto xpt = geometry::exit_point(patht);
            for (int j = 1; j <= xpt.xi_e1; ++j) x.Ft += 1.0 - double(e.at(0, j));
        });

        std::vector<double> G(static_cast<size_t>(S));
        for (long k = 0; k < S; ++k) G[size_t(k)] = xs[size_t(k)].G;
        const auto gsum = stats::summarize(G);

        if (u == 1.0) {
            long nz = 0;
            for (double g : G)
                if (g != double(m)) ++nz;
            out.verdicts.push_back(exact_verdict("degenerate-both-sides-zero",
                                                 nz + long(gsum.variance != 0.0), S, seed,
                                                 "u = 1: Var(G) and identity rhs both vanish"));
            Row row;
            row.add("m", m);
            row.add("n", n);
            row.add("var_G", gsum.variance);
            row.add("rhs", 0.0);
            out.rows.push_back(row);
            return out;
        }

        const double uu = u * (1.0 - u);
        const double lw = env::ell(p, u);
        // Batch means: unbiased per-batch estimates of Var(G), the two exit
        // functionals, and the covariance route, reduced in index order.
        const long B = 100;
        const long bs = S / B;
        std::vector<double> res_batch, res_t_batch, diff_batch;
        double aN_sum = 0, aT_sum = 0;
        for (long b = 0; b < B; ++b) {
            double mg = 0, ms = 0, mn2 = 0, mf = 0, mft = 0;
            for (long k = b * bs; k < (b + 1) * bs; ++k) {
                mg += xs[size_t(k)].G;
                ms += xs[size_t(k)].S;
                mn2 += xs[size_t(k)].Nc;
                mf += xs[size_t(k)].F;
                mft += xs[size_t(k)].Ft;
            }
            mg /= double(bs);
            ms /= double(bs);
            mn2 /= double(bs);
            mf /= double(bs);
            mft /= double(bs);
            double vg = 0, csn = 0;
            for (long k = b * bs; k < (b + 1) * bs; ++k) {
                vg += (xs[size_t(k)].G - mg) * (xs[size_t(k)].G - mg);
                csn += (xs[size_t(k)].S - ms) * (xs[size_t(k)].Nc - mn2);
            }
            vg /= double(bs - 1);
            csn /= double(bs - 1);
            const double aN = mf / (1.0 - u);
            const double aT = mft / (1.0 - lw);
            const double aCov = csn / uu;
            aN_sum += aN;
            aT_sum += aT;
            res_batch.push_back(vg - theory::variance_identity_rhs(p, u, m, n, aN));
            res_t_batch.push_back(vg - theory::variance_identity_rhs(p, lw, n, m, aT));
            diff_batch.push_back(aN - aCov);
        }
        const auto res_s = stats::summarize(res_batch);
        const auto res_t_s = stats::summarize(res_t_batch);
        const auto diff_s = stats::summarize(diff_batch);

        // Full-sample point estimates for the report.
        double mf_all = 0, mft_all = 0, ms_all = 0, mn_all = 0;
        for (const auto& x : xs) {
            mf_all += x.F;
            mft_all += x.Ft;
            ms_all += x.S;
            mn_all += x.Nc;
        }
        mf_all /= double(S);
        mft_all /= double(S);
        ms_all /= double(S);
        mn_all /= double(S);
        double cov_all = 0;
        for (const auto& x : xs) cov_all += (x.S - ms_all) * (x.Nc - mn_all);
        cov_all /= double(S - 1);
        const double aN_hat = mf_all / (1.0 - u);
        const double aT_hat = mft_all / (1.0 - lw);
        const double aCov_hat = cov_all / uu;

        Row row;
        row.add("m", m);
        row.add("n", n);
        row.add("samples", double(S));
        row.add("var_G", gsum.variance);
        row.add("var_G_stderr", gsum.variance_se);
        row.add("A_exit_functional", aN_hat);
        row.add("A_covariance", aCov_hat);
        row.add("A_east_form", -p / ((u + p * (1 - u)) * (u + p * (1 - u))) * aT_hat);
        row.add("rhs_north_form", theory::variance_identity_rhs(p, u, m, n, aN_hat));
        row.add("rhs_east_form", theory::variance_identity_rhs(p, lw, n, m, aT_hat));
        row.add("residual_north", res_s.mean);
        row.add("residual_north_se", res_s.mean_se);
        row.add("residual_east", res_t_s.mean);
        row.add("residual_east_se", res_t_s.mean_se);
        out.rows.push_back(row);

        out.verdicts.push_back(stat_verdict("identity-residual-north-form",
                                            std::fabs(res_s.mean), "<=", 3.0 * res_s.mean_se, S,
                                            seed));
        out.verdicts.push_back(stat_verdict("identity-residual-east-form",
                                            std::fabs(res_t_s.mean), "<=", 3.0 * res_t_s.mean_se, S,
                                            seed));
        out.verdicts.push_back(stat_verdict("exit-functional-vs-covariance",
                                            std::fabs(diff_s.mean), "<=", 3.0 * diff_s.mean_se, S,
                                            seed));
        return out;
    };
    return run_with_retry(cfg, pass);
}

// ---------------------------------------------------------------- burke

namespace {

struct BurkeSample {
    std::array<uint64_t, 2> bits{};  // 128 down-right path variables
    std::array<uint8_t, 6> alpha{};
    uint16_t north_ones = 0;
};

}  // namespace

ExperimentResult run_burke_suite(const ExperimentConfig& cfg) {
    if (cfg.m_fixed != cfg.n_fixed)
        throw std::invalid_argument("burke: staircase test needs a square rectangle");
    const int n = int(cfg.n_fixed);
    const double p = cfg.p, u = cfg.u, lw = env::ell(cfg.p, cfg.u);
    const int nvars = 2 * n;

    // Alpha probe cells (i,j), interior to the staircase: i + j <= n + 1.
    std::array<Site, 6> acells{};
    {
        auto clampi = [&](int v) { return std::max(1, std::min(v, n - 1)); };
        acells = {Site{clampi(n / 16), clampi(n / 16)}, Site{clampi(n / 6), clampi(n / 3)},
                  Site{clampi(n / 3), clampi(n / 6)},  Site{clampi(n / 2), clampi(n / 2)},
                  Site{clampi(n / 7), clampi(2 * n / 3)}, Site{clampi(2 * n / 3), clampi(n / 7)}};
        for (auto& s : acells)
            while (s.x + s.y > n + 1) (s.x > s.y ? s.x : s.y) -= 1;
    }

    auto pass = [&](uint64_t seed) {
        PassOutput out;

        // Exact rational one-cell checks at the pinned parameter triples.
        const std::array<std::pair<Rat, Rat>, 3> exact_params = {
            std::pair<Rat, Rat>{Rat(1, 2), Rat(1, 2)}, {Rat(1, 4), Rat(2, 3)}, {Rat(3, 4), Rat(1, 3)}};
        long exact_fail = 0;
        for (const auto& [rp, ru] : exact_params) {
            const auto sc = burke::single_cell_exact(rp, ru);
            const auto fc = burke::full_cell_exact(rp, ru);
            Row row;
            row.add("exact_p", rp.to_double());
            row.add("exact_u", ru.to_double());
            row.add("single_cell_ok", sc.marginals_ok && sc.independence_ok);
            row.add("full_cell_ok", fc.marginals_ok && fc.independence_ok);
            out.rows.push_back(row);
            if (!(sc.marginals_ok && sc.independence_ok)) ++exact_fail;
            if (!(fc.marginals_ok && fc.independence_ok)) ++exact_fail;
        }
        out.verdicts.push_back(
            exact_verdict("burke-exact-factorization", exact_fail, 3, seed,
                          "rational-arithmetic one-cell and full-cell independence"));

        // Monte Carlo staircase pass.
        const long S = cfg.samples;
        std::vector<BurkeSample> xs(static_cast<size_t>(S));
        const uint64_t tag_env = stream_tag("burke-env");
        const uint64_t tag_beta = stream_tag("burke-beta");
        parallel_samples(S, cfg.workers, [&](long k) {
            Rng rng = substream(seed, tag_env, uint64_t(k));
            const auto e = env::sample_environment({p, u}, n, n, rng);
            const auto f = passage::compute_passage(e);
            BurkeSample& b = xs[size_t(k)];
            for (int t = 1; t <= n; ++t) {
                const int i = t, j = n + 1 - t;
                const int vI = f.I(i, j);
                const int vJ = f.J(i, j);
                const int idx = 2 * (t - 1);
                if (vI) b.bits[idx / 64] |= 1ULL << (idx % 64);
                if (vJ) b.bits[(idx + 1) / 64] |= 1ULL << ((idx + 1) % 64);
            }
            for (int i = 1; i <= n; ++i) b.north_ones += uint16_t(f.I(i, n));
            Rng beta = substream(seed, tag_beta, uint64_t(k));
            for (size_t a = 0; a < acells.size(); ++a) {
                const int i = acells[a].x + 1, j = acells[a].y + 1;
                const int in_i = f.I(i, j - 1), in_j = f.J(i - 1, j);
                const uint8_t bclaim = beta.bernoulli(p);  // consumed per cell, fixed order
                uint8_t v;
                if (in_i == 1 && in_j == 1)
                    v = 1;
                else if (e.at(i, j) == 0 && in_i == 0 && in_j == 0)
                    v = 0;
                else
                    v = bclaim;
                b.alpha[a] = v;
            }
        });

        auto bit = [&](const BurkeSample& b, int idx) -> int {
            return int((b.bits[idx / 64] >> (idx % 64)) & 1ULL);
        };

        // Pooled marginals per class (the path variables are mutually
        // independent, so pooling across variables is legitimate).
        long long ones_I = 0, ones_J = 0, ones_north = 0, ones_alpha = 0;
        for (const auto& b : xs) {
            for (int t = 0; t < n; ++t) {
                ones_I += bit(b, 2 * t);
                ones_J += bit(b, 2 * t + 1);
            }
            ones_north += b.north_ones;
            for (auto a : b.alpha) ones_alpha += a;
        }
        auto pooled_z = [](long long ones, long long trials, double q) {
            return (double(ones) / double(trials) - q) / std::sqrt(q * (1 - q) / double(trials));
        };
        const long long trials = (long long)(S)*n;
        const long long atrials = (long long)(S)*long(acells.size());
        out.verdicts.push_back(stat_verdict("pooled-e1-marginal-z",
                                            std::fabs(pooled_z(ones_I, trials, u)), "<=", 3.0, S,
                                            seed));
        out.verdicts.push_back(stat_verdict("pooled-e2-marginal-z",
                                            std::fabs(pooled_z(ones_J, trials, lw)), "<=", 3.0, S,
                                            seed));
        out.verdicts.push_back(stat_verdict("north-edge-increment-z",
                                            std::fabs(pooled_z(ones_north, trials, u)), "<=", 3.0,
                                            S, seed));
        out.verdicts.push_back(stat_verdict("alpha-marginal-z",
                                            std::fabs(pooled_z(ones_alpha, atrials, p)), "<=", 3.0,
                                            S, seed));

        // Pairwise independence over 50 deterministic random pairs.
        Rng pick = substream(seed, stream_tag("burke-pairs"), 0);
        long pairs_pass = 0;
        const int npairs = 50;
        for (int t = 0; t < npairs; ++t) {
            int a = int(pick.below(uint64_t(nvars)));
            int b = int(pick.below(uint64_t(nvars)));
            while (b == a) b = int(pick.below(uint64_t(nvars)));
            std::vector<std::vector<long long>> tab(2, std::vector<long long>(2, 0));
            for (const auto& x : xs) ++tab[size_t(bit(x, a))][size_t(bit(x, b))];
            const auto c2 = stats::chi_square_independence(tab);
            if (c2.p_value > 1e-3) ++pairs_pass;
        }
        out.verdicts.push_back(stat_verdict("pairwise-independence-pass-count",
                                            double(pairs_pass), ">=", 48.0, S, seed));

        // Alpha cells against path variables: 12 two-way tests and 4
        // three-way mutual-independence tests.
        long apairs_pass = 0;
        for (int t = 0; t < 12; ++t) {
            const size_t ac = size_t(t) % acells.size();
            const int lv = int(pick.below(uint64_t(nvars)));
            std::vector<std::vector<long long>> tab(2, std::vector<long long>(2, 0));
            for (const auto& x : xs) ++tab[x.alpha[ac]][size_t(bit(x, lv))];
            const auto c2 = stats::chi_square_independence(tab);
            if (c2.p_value > 1e-3) ++apairs_pass;
        }
        out.verdicts.push_back(stat_verdict("alpha-path-independence-pass-count",
                                            double(apairs_pass), ">=", 11.0, S, seed));
        long triples_pass = 0;
        for (int t = 0; t < 4; ++t) {
            const size_t ac = size_t(t) % acells.size();
            int a = int(pick.below(uint64_t(nvars)));
            int b = int(pick.below(uint64_t(nvars)));
            while (b == a) b = int(pick.below(uint64_t(nvars)));
            std::vector<std::vector<std::vector<long long>>> tab(
                2, std::vector<std::vector<long long>>(2, std::vector<long long>(2, 0)));
            for (const auto& x : xs) ++tab[x.alpha[ac]][size_t(bit(x, a))][size_t(bit(x, b))];
            const auto c3 = stats::chi_square_independence3(tab);
            if (c3.p_value > 1e-3) ++triples_pass;
        }
        out.verdicts.push_back(
            stat_verdict("alpha-three-way-pass-count", double(triples_pass), ">=", 3.0, S, seed));

        Row mc;
        mc.add("samples", double(S));
        mc.add("n", double(n));
        mc.add("pooled_I_mean", double(ones_I) / double(trials));
        mc.add("pooled_J_mean", double(ones_J) / double(trials));
        mc.add("north_mean", double(ones_north) / double(trials));
        mc.add("alpha_mean", double(ones_alpha) / double(atrials));
        mc.add("pairs_pass", double(pairs_pass));
        out.rows.push_back(mc);
        return out;
    };
    return run_with_retry(cfg, pass);
}

// ---------------------------------------------------------------- oracle selftest

ExperimentResult run_oracle_selftest(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.experiment = cfg.experiment;
    res.config = cfg;
    const std::array<double, 3> qs = {0.25, 0.5, 0.75};
    long mism_boundary = 0, mism_bulk = 0, total = 0;
    const uint64_t tag = stream_tag("oracle-selftest");
    uint64_t case_id = 0;
    for (double p : qs)
        for (double u : qs) {
            long cases = 0;
            for (int m = 1; m <= 5; ++m)
                for (int n = 1; n <= 5; ++n)
                    for (long k = 0; k < cfg.samples; ++k) {
                        Rng rng = substream(cfg.seed, tag, case_id++);
                        const auto e = env::sample_environment({p, u}, m, n, rng);
                        const auto f = passage::compute_passage(e);
                        const auto o = oracle::enumerate_lpp(e, passage::FieldMode::Boundary, {0, 0});
                        if (f.G(m, n) != o.best) ++mism_boundary;
                        const auto fb = passage::compute_bulk_passage(e, {1, 1});
                        const auto ob = oracle::enumerate_lpp(e, passage::FieldMode::Bulk, {1, 1});
                        if (fb.G(m, n) != ob.best) ++mism_bulk;
                        ++cases;
                        ++total;
                    }
            Row row;
            row.add("p", p);
            row.add("u", u);
            row.add("instances", double(cases));
            row.add("boundary_mismatches", double(mism_boundary));
            row.add("bulk_mismatches", double(mism_bulk));
            res.rows.push_back(row);
        }
    res.verdicts.push_back(
        exact_verdict("oracle-equivalence-boundary", mism_boundary, total, cfg.seed));
    res.verdicts.push_back(exact_verdict("oracle-equivalence-bulk", mism_bulk, total, cfg.seed));
    return res;
}

}  // namespace dhlpp::harness
