#include "dhlpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dhlpp::stats {

SampleSummary summarize(const std::vector<double>& samples) {
    const size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("summarize: need at least 2 samples");
    SampleSummary s;
    s.count = n;
    double acc = 0.0;
    for (double v : samples) acc += v;
    s.mean = acc / double(n);
    double m2 = 0.0, m4 = 0.0;
    for (double v : samples) {
        const double d = v - s.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    s.variance = m2 / double(n - 1);
    s.mean_se = std::sqrt(s.variance / double(n));
    const double m2n = m2 / double(n);
    const double m4n = m4 / double(n);
    // Var(s^2) ~ (m4 - (n-3)/(n-1) m2^2) / n
    const double vs2 = (m4n - (double(n) - 3.0) / (double(n) - 1.0) * m2n * m2n) / double(n);
    s.variance_se = vs2 > 0.0 ? std::sqrt(vs2) : 0.0;
    return s;
}

namespace {

// Regularized incomplete gamma Q(a, x) by series / continued fraction.
double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, return 1 - P.
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - gln);
        return 1.0 - p;
    }
    // Continued fraction (modified Lentz).
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double chi2_sf(double x, long k) {
    if (k <= 0) throw std::invalid_argument("chi2_sf: dof must be positive");
    if (x <= 0.0) return 1.0;
    return gamma_q(double(k) / 2.0, x / 2.0);
}

Chi2Result chi_square_independence(const std::vector<std::vector<long long>>& table) {
    const size_t r = table.size();
    if (r < 2) throw std::invalid_argument("chi_square_independence: need at least 2 rows");
    const size_t c = table[0].size();
    if (c < 2) throw std::invalid_argument("chi_square_independence: need at least 2 columns");
    std::vector<double> rowsum(r, 0.0), colsum(c, 0.0);
    double total = 0.0;
    for (size_t i = 0; i < r; ++i) {
        if (table[i].size() != c) throw std::invalid_argument("chi_square_independence: ragged table");
        for (size_t j = 0; j < c; ++j) {
            rowsum[i] += double(table[i][j]);
            colsum[j] += double(table[i][j]);
            total += double(table[i][j]);
        }
    }
    Chi2Result out;
    out.dof = long((r - 1) * (c - 1));
    double stat = 0.0;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) {
            const double expect = rowsum[i] * colsum[j] / total;
            if (expect < 5.0) out.valid = false;
            if (expect > 0.0) {
                const double d = double(table[i][j]) - expect;
                stat += d * d / expect;
            }
        }
    out.statistic = stat;
    out.p_value = chi2_sf(stat, out.dof);
    return out;
}

Chi2Result chi_square_independence3(
    const std::vector<std::vector<std::vector<long long>>>& table) {
    const size_t r = table.size(), c = table[0].size(), l = table[0][0].size();
    std::vector<double> a(r, 0.0), b(c, 0.0), d(l, 0.0);
    double total = 0.0;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            for (size_t k = 0; k < l; ++k) {
                const double v = double(table[i][j][k]);
                a[i] += v;
                b[j] += v;
                d[k] += v;
                total += v;
            }
    Chi2Result out;
    out.dof = long(r * c * l - r - c - l + 2);
    double stat = 0.0;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            for (size_t k = 0; k < l; ++k) {
                const double expect = a[i] * b[j] * d[k] / (total * total);
                if (expect < 5.0) out.valid = false;
                if (expect > 0.0) {
                    const double diff = double(table[i][j][k]) - expect;
                    stat += diff * diff / expect;
                }
            }
    out.statistic = stat;
    out.p_value = chi2_sf(stat, out.dof);
    return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    const size_t n = samples.size();
    if (n < 100) throw std::invalid_argument("ks_statistic: need at least 100 samples");
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, double(i + 1) / double(n) - f);
        d = std::max(d, f - double(i) / double(n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() || ib < b.size()) {
        double v;
        if (ib >= b.size() || (ia < a.size() && a[ia] <= b[ib]))
            v = a[ia];
        else
            v = b[ib];
        while (ia < a.size() && a[ia] <= v) ++ia;
        while (ib < b.size() && b[ib] <= v) ++ib;
        const double fa = double(ia) / double(a.size());
        const double fb = double(ib) / double(b.size());
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

double ks_two_sample_threshold(size_t n, size_t m, double alpha) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(double(n + m) / (double(n) * double(m)));
}

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n < 3 || y.size() != n) throw std::invalid_argument("linear_fit: need >= 3 points");
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        rss += e * e;
    }
    f.slope_se = n > 2 ? std::sqrt(rss / double(n - 2) / sxx) : 0.0;
    f.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
    return f;
}

FitResult loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("loglog_slope: need >= 3 points");
    std::vector<double> lx, ly;
    lx.reserve(points.size());
    ly.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("loglog_slope: inputs must be positive");
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
    }
    return linear_fit(lx, ly);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace dhlpp::stats
