#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "dhlpp/env.hpp"

namespace dhlpp::theory {

// Point-to-point shape function of the bulk model. Flat branches are tested
// first; branch misclassification near the critical lines t = ps and t = s/p
// is the only numerical hazard here.
inline double shape_pp(double p, double s, double t) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("shape_pp: p must be in (0,1)");
    if (s < 0.0 || t < 0.0) throw std::invalid_argument("shape_pp: direction must be nonnegative");
    if (s == 0.0 || t == 0.0) return 0.0;
    if (t * p >= s) return s;       // t >= s/p
    if (t <= p * s) return t;       // t <= ps
    return (2.0 * std::sqrt(p * s * t) - p * (t + s)) / (1.0 - p);
}

// Law of large numbers limit of the boundary model: s*u + t*ell(u).
inline double shape_boundary(double p, double u, double s, double t) {
    env::Params params{p, u};
    params.validate();
    if (s < 0.0 || t < 0.0) throw std::invalid_argument("shape_boundary: direction must be nonnegative");
    return s * u + t * env::ell(p, u);
}

// Minimizing boundary parameter of the infimum representation
// g_pp(x,1) = inf_u { x u + ell(u) }.
inline double minimizer_u(double p, double x) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("minimizer_u: p must be in (0,1)");
    if (!(x > 0.0 && x <= 1.0)) throw std::invalid_argument("minimizer_u: x must be in (0,1]");
    if (x <= p) return 1.0;
    return (std::sqrt(p / x) - p) / (1.0 - p);
}

// Characteristic endpoint (N, floor(N (p+(1-p)u)^2 / p)): the rectangle shape
// along which the boundary terms of the variance identity cancel.
inline std::pair<long, long> characteristic_endpoint(double p, double u, long N) {
    env::Params params{p, u};
    params.validate();
    if (N < 1) throw std::invalid_argument("characteristic_endpoint: N must be >= 1");
    const double d = p + (1.0 - p) * u;
    return {N, long(std::floor(double(N) * d * d / p))};
}

// Right-hand side of the variance identity:
//   n p u(1-u)/(u+p(1-u))^2 - m u(1-u) + 2 u(1-u) A.
inline double variance_identity_rhs(double p, double u, double m, double n, double A) {
    env::Params params{p, u};
    params.validate();
    const double d = u + p * (1.0 - u);
    const double uu = u * (1.0 - u);
    return n * p * uu / (d * d) - m * uu + 2.0 * uu * A;
}

}  // namespace dhlpp::theory
