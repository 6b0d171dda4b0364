// Acceptance suite: one pass/fail line per criterion, strict configurations.
//
//   acceptance            run all criteria
//   acceptance --only K   run criterion K alone
//
// Exit code: 0 all pass, 1 statistical failure, 2 exact-invariant violation,
// 3 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "dhlpp/burke_exact.hpp"
#include "dhlpp/harness.hpp"
#include "dhlpp/rng.hpp"
#include "dhlpp/theory.hpp"

using namespace dhlpp;
using namespace dhlpp::harness;

namespace {

struct CriterionOutcome {
    bool pass = false;
    bool exact_violation = false;
    std::string detail;
};

constexpr uint64_t kAcceptanceSeed = 20250810;

CriterionOutcome from_result(const ExperimentResult& r) {
    CriterionOutcome o;
    o.pass = r.all_pass();
    o.exact_violation = r.any_exact_violation();
    for (const auto& v : r.verdicts) {
        if (!o.detail.empty()) o.detail += "; ";
        char buf[160];
        if (v.comparator == "in")
            std::snprintf(buf, sizeof buf, "%s=%.4g in [%.3g,%.3g]%s", v.name.c_str(), v.statistic,
                          v.range_lo, v.range_hi, v.pass ? "" : " FAILED");
        else
            std::snprintf(buf, sizeof buf, "%s=%.4g %s %.4g%s", v.name.c_str(), v.statistic,
                          v.comparator.c_str(), v.threshold, v.pass ? "" : " FAILED");
        o.detail += buf;
    }
    return o;
}

// 1. Oracle equivalence on every (m,n) <= (5,5) and (p,u) in {1/4,1/2,3/4}^2.
CriterionOutcome criterion_oracle() {
    auto cfg = default_config("oracle-selftest");
    cfg.samples = 200;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 2. Exact Burke factorization in rational arithmetic.
CriterionOutcome criterion_burke_exact() {
    const std::pair<Rat, Rat> params[] = {{Rat(1, 2), Rat(1, 2)},
                                          {Rat(1, 4), Rat(2, 3)},
                                          {Rat(3, 4), Rat(1, 3)}};
    CriterionOutcome o;
    o.pass = true;
    for (const auto& [p, u] : params) {
        const auto sc = burke::single_cell_exact(p, u);
        const auto fc = burke::full_cell_exact(p, u);
        const bool ok =
            sc.marginals_ok && sc.independence_ok && fc.marginals_ok && fc.independence_ok;
        char buf[96];
        std::snprintf(buf, sizeof buf, "(p=%lld/%lld,u=%lld/%lld)=%s ", p.num, p.den, u.num, u.den,
                      ok ? "exact" : "VIOLATED");
        o.detail += buf;
        if (!ok) {
            o.pass = false;
            o.exact_violation = true;
        }
    }
    return o;
}

// 3. Statistical Burke suite at m = n = 64 with 10^5 samples.
CriterionOutcome criterion_burke_mc() {
    auto cfg = default_config("burke");
    cfg.samples = 100000;
    cfg.m_fixed = cfg.n_fixed = 64;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 4. Variance identity and agreement of the two A_N estimators.
CriterionOutcome criterion_identity() {
    auto cfg = default_config("identity");
    cfg.samples = 100000;
    cfg.m_fixed = cfg.n_fixed = 64;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 5. Characteristic variance exponent over N in {64,...,1024}.
CriterionOutcome criterion_variance_scan() {
    auto cfg = default_config("variance-scan");
    cfg.n_grid = {64, 128, 256, 512, 1024};
    cfg.samples = 10000;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 6. Off-characteristic CLT at N = 512, alpha = 0.9, |c| = 1.
CriterionOutcome criterion_clt() {
    auto cfg = default_config("clt");
    cfg.n_grid = {64, 128, 256, 512};
    cfg.samples = 5000;
    cfg.c = -1.0;
    cfg.alpha = 0.9;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 7. Flat edge at p = 1/2, y/x = 0.3.
CriterionOutcome criterion_flat_edge() {
    auto cfg = default_config("flat-edge");
    cfg.n_grid = {100, 200, 400};
    cfg.samples = 10000;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 8. Exit tails: r-tail slope at N = 512 and tightness of E[xi] N^{-2/3}.
CriterionOutcome criterion_exit_tails() {
    auto cfg = default_config("exit-tails");
    cfg.n_grid = {128, 256, 512, 1024};
    cfg.samples = 20000;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 9. Path fluctuations: transversal scale and b-tail.
CriterionOutcome criterion_path_fluct() {
    auto cfg = default_config("path-fluct");
    cfg.n_grid = {128, 256, 512, 1024};
    cfg.samples = 4000;
    cfg.tau = 0.5;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 10. Exact coupling and ordering invariants, zero violations.
CriterionOutcome criterion_coupling() {
    auto cfg = default_config("coupling");
    cfg.samples = 1000;
    cfg.m_fixed = cfg.n_fixed = 64;
    cfg.seed = kAcceptanceSeed;
    return from_result(run_experiment(cfg));
}

// 11. Brute-force minimization over u reproduces the bulk shape function.
CriterionOutcome criterion_shape_minimizer() {
    CriterionOutcome o;
    o.pass = true;
    Rng rng = substream(kAcceptanceSeed, stream_tag("shape-minimizer"), 0);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double p = 0.1 + 0.8 * rng.uniform();
        const double x = p + (1.0 - p) * (0.02 + 0.98 * rng.uniform());
        double best = theory::shape_boundary(p, 1.0, x, 1.0);
        for (int k = 1; k <= 999; ++k)
            best = std::min(best, theory::shape_boundary(p, k / 1000.0, x, 1.0));
        const double err = std::fabs(best - theory::shape_pp(p, x, 1.0));
        worst = std::max(worst, err);
        if (err >= 1e-4) o.pass = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |min_u boundary - shape_pp| = %.3g (tol 1e-4)", worst);
    o.detail = buf;
    return o;
}

// 12. Byte-identical outputs across worker counts and reruns.
CriterionOutcome criterion_reproducibility() {
    CriterionOutcome o;
    auto base = default_config("variance-scan");
    base.n_grid = {32, 64};
    base.samples = 500;
    base.seed = kAcceptanceSeed;
    auto c1 = base, c2 = base, c4 = base;
    c1.workers = 1;
    c2.workers = 2;
    c4.workers = 4;
    const auto r1 = run_experiment(c1);
    const auto r2 = run_experiment(c2);
    const auto r4 = run_experiment(c4);
    const auto r1b = run_experiment(c1);
    const bool json_ok = to_json_string(r1) == to_json_string(r2) &&
                         to_json_string(r1) == to_json_string(r4) &&
                         to_json_string(r1) == to_json_string(r1b);
    const bool csv_ok = to_csv_string(r1) == to_csv_string(r2) &&
                        to_csv_string(r1) == to_csv_string(r4);
    // a second experiment type for good measure
    auto ce = default_config("coupling");
    ce.samples = 120;
    auto ce1 = ce, ce3 = ce;
    ce1.workers = 1;
    ce3.workers = 3;
    const bool coupling_ok =
        to_json_string(run_experiment(ce1)) == to_json_string(run_experiment(ce3));
    o.pass = json_ok && csv_ok && coupling_ok;
    o.detail = std::string("json ") + (json_ok ? "identical" : "DIFFERS") + ", csv " +
               (csv_ok ? "identical" : "DIFFERS") + ", coupling " +
               (coupling_ok ? "identical" : "DIFFERS");
    if (!o.pass) o.exact_violation = true;
    return o;
}

struct Criterion {
    int id;
    const char* name;
    CriterionOutcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "oracle equivalence (m,n <= 5, 9 parameter pairs, 200 instances each)", criterion_oracle},
    {2, "exact Burke factorization (rational arithmetic)", criterion_burke_exact},
    {3, "statistical Burke suite (m = n = 64, 10^5 samples)", criterion_burke_mc},
    {4, "variance identity and A_N estimator agreement (10^5 samples)", criterion_identity},
    {5, "characteristic variance exponent (N = 64..1024)", criterion_variance_scan},
    {6, "off-characteristic CLT (N = 512, alpha = 0.9, c = -1)", criterion_clt},
    {7, "flat edge (p = 1/2, y/x = 0.3)", criterion_flat_edge},
    {8, "exit-point tails and E[xi] N^{-2/3} tightness", criterion_exit_tails},
    {9, "path fluctuations (transversal scale and b-tail)", criterion_path_fluct},
    {10, "exact coupling and ordering invariants (zero violations)", criterion_coupling},
    {11, "closed-form cross-check of the shape minimizer", criterion_shape_minimizer},
    {12, "bit-reproducibility across worker counts", criterion_reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::fprintf(stderr, "usage: acceptance [--only K]\n");
            return 3;
        }
    }
    if (only < 0 || only > 12) {
        std::fprintf(stderr, "usage: acceptance [--only K] with K in 1..12\n");
        return 3;
    }

    bool any_fail = false, any_exact = false;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        const auto out = c.run();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d/12: %s  (%.1f s)\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.name, secs);
        if (!out.detail.empty()) std::printf("        %s\n", out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) {
            any_fail = true;
            if (out.exact_violation) any_exact = true;
        }
    }
    if (any_exact) return 2;
    if (any_fail) return 1;
    return 0;
}
