#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "dhlpp/rng.hpp"
#include "dhlpp/stats.hpp"
#include "doctest.h"

using namespace dhlpp;
using namespace dhlpp::stats;

TEST_CASE("summarize basics") {
    CHECK_THROWS_AS(summarize({1.0}), std::invalid_argument);
    const auto z = summarize({0, 0, 0, 0});
    CHECK(z.mean == 0.0);
    CHECK(z.variance == 0.0);
    const auto b = summarize({0, 1});
    CHECK(b.mean == doctest::Approx(0.5));
    CHECK(b.variance == doctest::Approx(0.5));  // unbiased, n-1 divisor

    // permutation invariance
    std::vector<double> v = {3.5, -1.0, 7.25, 0.0, 2.0, 2.0, 9.5};
    auto w = v;
    std::sort(w.begin(), w.end());
    const auto s1 = summarize(v), s2 = summarize(w);
    CHECK(s1.mean == doctest::Approx(s2.mean).epsilon(1e-15));
    CHECK(s1.variance == doctest::Approx(s2.variance).epsilon(1e-15));

    // Bernoulli variance with fourth-moment stderr
    Rng r(99);
    std::vector<double> ber(100000);
    for (auto& x : ber) x = r.bernoulli(0.5) ? 1.0 : 0.0;
    const auto s = summarize(ber);
    CHECK(std::fabs(s.variance - 0.25) < 3.0 * s.variance_se);
    CHECK(s.variance_se < 0.001);
}

TEST_CASE("chi-square independence: proportional, calibrated, dependent") {
    // perfectly proportional table -> statistic 0
    const auto z = chi_square_independence({{10, 20}, {30, 60}});
    CHECK(z.statistic == doctest::Approx(0.0));
    CHECK(z.p_value == doctest::Approx(1.0));

    // calibration: independent bits, p-value > 1e-3 in >= 99% of 100 reps
    int pass = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Rng r(1000 + uint64_t(rep));
        std::vector<std::vector<long long>> tab(2, std::vector<long long>(2, 0));
        for (int k = 0; k < 100000; ++k) {
            const int a = r.bernoulli(0.5), b = r.bernoulli(0.5);
            ++tab[a][b];
        }
        if (chi_square_independence(tab).p_value > 1e-3) ++pass;
    }
    CHECK(pass >= 99);

    // full dependence: p-value < 1e-6
    Rng r(77);
    std::vector<std::vector<long long>> dep(2, std::vector<long long>(2, 0));
    for (int k = 0; k < 100000; ++k) {
        const int a = r.bernoulli(0.5);
        ++dep[a][a];
    }
    CHECK(chi_square_independence(dep).p_value < 1e-6);

    // sparse table flagged
    const auto sp = chi_square_independence({{1, 0}, {0, 1}});
    CHECK_FALSE(sp.valid);
}

TEST_CASE("three-way mutual independence") {
    Rng r(55);
    std::vector<std::vector<std::vector<long long>>> tab(
        2, std::vector<std::vector<long long>>(2, std::vector<long long>(2, 0)));
    for (int k = 0; k < 100000; ++k)
        ++tab[r.bernoulli(0.5)][r.bernoulli(0.3)][r.bernoulli(0.7)];
    const auto c = chi_square_independence3(tab);
    CHECK(c.dof == 4);
    CHECK(c.p_value > 1e-3);

    // a dependent triple is caught
    std::vector<std::vector<std::vector<long long>>> dep(
        2, std::vector<std::vector<long long>>(2, std::vector<long long>(2, 0)));
    for (int k = 0; k < 100000; ++k) {
        const int a = r.bernoulli(0.5), b = r.bernoulli(0.5);
        ++dep[a][b][a ^ b];
    }
    CHECK(chi_square_independence3(dep).p_value < 1e-6);
}

TEST_CASE("ks statistic: calibration, constant sample, CLT") {
    CHECK_THROWS_AS(ks_statistic(std::vector<double>(10, 0.5), [](double) { return 0.5; }),
                    std::invalid_argument);

    Rng r(123);
    std::vector<double> u(10000);
    for (auto& x : u) x = r.uniform();
    const double d = ks_statistic(u, [](double x) { return std::min(1.0, std::max(0.0, x)); });
    CHECK(d < 1.63 / std::sqrt(10000.0));  // 99% point

    std::vector<double> cst(200, 0.25);
    CHECK(ks_statistic(cst, [](double x) { return std::min(1.0, std::max(0.0, x)); }) >= 0.5);

    // standardized Bernoulli sums against the standard normal
    std::vector<double> s(2000);
    for (auto& x : s) {
        int acc = 0;
        for (int k = 0; k < 1000; ++k) acc += r.bernoulli(0.5);
        x = (acc - 500.0) / std::sqrt(250.0);
    }
    CHECK(ks_statistic(s, [](double x) { return normal_cdf(x); }) < 0.05);
}

TEST_CASE("two-sample ks on identical and shifted laws") {
    Rng r(321);
    std::vector<double> a(5000), b(5000), c(5000);
    for (auto& x : a) x = r.uniform();
    for (auto& x : b) x = r.uniform();
    for (auto& x : c) x = r.uniform() + 0.2;
    CHECK(ks_two_sample(a, b) < ks_two_sample_threshold(5000, 5000, 1e-3));
    CHECK(ks_two_sample(a, c) > ks_two_sample_threshold(5000, 5000, 1e-3));
    // tie-heavy integer samples: identical law passes
    std::vector<double> d1(5000), d2(5000);
    for (auto& x : d1) x = double(int(4 * r.uniform()));
    for (auto& x : d2) x = double(int(4 * r.uniform()));
    CHECK(ks_two_sample(d1, d2) < ks_two_sample_threshold(5000, 5000, 1e-3));
}

TEST_CASE("loglog slope") {
    const auto f = loglog_slope({{64, std::pow(64.0, 2.0 / 3.0)},
                                 {128, std::pow(128.0, 2.0 / 3.0)},
                                 {256, std::pow(256.0, 2.0 / 3.0)}});
    CHECK(f.slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0));

    const auto g = loglog_slope({{1, 3.7}, {2, 7.4}, {5, 18.5}, {11, 40.7}});
    CHECK(g.slope == doctest::Approx(1.0).epsilon(1e-12));

    // mild multiplicative noise keeps the slope near 2/3
    Rng r(9);
    std::vector<std::pair<double, double>> pts;
    for (double x : {64.0, 128.0, 256.0, 512.0, 1024.0})
        pts.emplace_back(x, std::pow(x, 2.0 / 3.0) * (1.0 + 0.05 * (2.0 * r.uniform() - 1.0)));
    const auto h = loglog_slope(pts);
    CHECK(h.slope > 0.60);
    CHECK(h.slope < 0.73);

    CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {2.0, -1.0}, {3.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("chi2 survival function sanity") {
    // chi2 with 1 dof: P(X > 3.841) ~ 0.05
    CHECK(chi2_sf(3.841459, 1) == doctest::Approx(0.05).epsilon(1e-4));
    CHECK(chi2_sf(0.0, 3) == doctest::Approx(1.0));
    CHECK(chi2_sf(100.0, 1) < 1e-20);
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-6));
}
