#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace dhlpp::stats {

struct SampleSummary {
    size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double mean_se = 0.0;
    double variance_se = 0.0;  // via fourth central moment
};

// Reductions run in index order so results are bit-reproducible.
SampleSummary summarize(const std::vector<double>& samples);

struct Chi2Result {
    double statistic = 0.0;
    double p_value = 1.0;
    long dof = 0;
    bool valid = true;  // false when expected counts fall below 5
};

// Pearson test against the product-of-marginals model for a 2-way table.
Chi2Result chi_square_independence(const std::vector<std::vector<long long>>& table);

// Mutual-independence test for a 3-way table, counts[i][j][k].
Chi2Result chi_square_independence3(
    const std::vector<std::vector<std::vector<long long>>>& table);

// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample KS statistic, tie-safe (sup over right limits).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Conservative two-sample threshold at significance alpha.
double ks_two_sample_threshold(size_t n, size_t m, double alpha);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double r_squared = 0.0;
};

// Least squares of log y on log x; inputs must be positive.
FitResult loglog_slope(const std::vector<std::pair<double, double>>& points);

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

double normal_cdf(double x);

// Upper tail of the chi-square distribution with k degrees of freedom.
double chi2_sf(double x, long k);

}  // namespace dhlpp::stats
