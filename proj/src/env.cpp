#include "dhlpp/env.hpp"

namespace dhlpp::env {

Environment sample_environment(const Params& params, int m, int n, Rng& stream) {
    params.validate();
    if (m < 1 || n < 1) throw std::invalid_argument("sample_environment: dims must be >= (1,1)");
    Environment e(m, n, params.p, params.u, params.west(), EnvTag::BoundaryModel);
    auto& w = e.mutable_weights();
    for (int i = 1; i <= m; ++i) w(i, 0) = stream.bernoulli(params.u);
    const double lu = params.west();
    for (int j = 1; j <= n; ++j) {
        w(0, j) = stream.bernoulli(lu);
        uint8_t* row = w.row(j);
        for (int i = 1; i <= m; ++i) row[i] = stream.bernoulli(params.p);
    }
    return e;
}

Environment sample_bulk_environment(double p, int m, int n, Rng& stream) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_bulk_environment: p must be in (0,1)");
    if (m < 1 || n < 1) throw std::invalid_argument("sample_bulk_environment: dims must be >= (1,1)");
    Environment e(m, n, p, 0.0, 0.0, EnvTag::BulkOnly);
    auto& w = e.mutable_weights();
    for (int j = 1; j <= n; ++j) {
        uint8_t* row = w.row(j);
        for (int i = 1; i <= m; ++i) row[i] = stream.bernoulli(p);
    }
    return e;
}

UniformField sample_uniform_field(int m, int n, Rng& stream) {
    if (m < 1 || n < 1) throw std::invalid_argument("sample_uniform_field: dims must be >= (1,1)");
    UniformField f{Grid<double>(m + 1, n + 1)};
    for (int j = 0; j <= n; ++j) {
        double* row = f.eta.row(j);
        for (int i = 0; i <= m; ++i) row[i] = stream.uniform();
    }
    return f;
}

Environment realize(const UniformField& field, const Params& params) {
    params.validate();
    const int m = field.m(), n = field.n();
    Environment e(m, n, params.p, params.u, params.west(), EnvTag::BoundaryModel);
    auto& w = e.mutable_weights();
    for (int i = 1; i <= m; ++i) w(i, 0) = field.eta(i, 0) < params.u;
    const double lu = params.west();
    for (int j = 1; j <= n; ++j) {
        w(0, j) = field.eta(0, j) < lu;
        uint8_t* row = w.row(j);
        const double* erow = field.eta.row(j);
        for (int i = 1; i <= m; ++i) row[i] = erow[i] < params.p;
    }
    return e;
}

Environment perturb_south(const Environment& e, const PerturbationSpec& spec, Rng& stream) {
    if (spec.side != Side::South) throw std::invalid_argument("perturb_south: spec.side must be South");
    if (!e.is_boundary_model()) throw std::invalid_argument("perturb_south: boundary-model environment required");
    const double u = e.south_q();
    spec.validate(e.p(), u);
    const double h = spec.epsilon / (1.0 - u);
    Environment r(e.m(), e.n(), e.p(), u + spec.epsilon, e.west_q(), e.tag());
    r.mutable_weights() = e.weights();
    auto& w = r.mutable_weights();
    for (int i = 1; i <= e.m(); ++i) {
        const uint8_t hi = stream.bernoulli(h);
        w(i, 0) = std::max(w(i, 0), hi);
    }
    return r;
}

Environment perturb_west(const Environment& e, const PerturbationSpec& spec, Rng& stream) {
    if (spec.side != Side::West) throw std::invalid_argument("perturb_west: spec.side must be West");
    if (!e.is_boundary_model()) throw std::invalid_argument("perturb_west: boundary-model environment required");
    const double u = e.south_q();
    spec.validate(e.p(), u);
    const double kill = spec.west_kill_probability(e.p(), u);
    Environment r(e.m(), e.n(), e.p(), u, ell(e.p(), u + spec.epsilon), e.tag());
    r.mutable_weights() = e.weights();
    auto& w = r.mutable_weights();
    for (int j = 1; j <= e.n(); ++j) {
        const uint8_t keep = !stream.bernoulli(kill);
        w(0, j) = w(0, j) & keep;
    }
    return r;
}

Environment transpose(const Environment& e) {
    Environment r(e.n(), e.m(), e.p(), e.west_q(), e.south_q(), e.tag());
    auto& w = r.mutable_weights();
    for (int j = 0; j <= e.m(); ++j)
        for (int i = 0; i <= e.n(); ++i) w(i, j) = e.at(j, i);
    return r;
}

}  // namespace dhlpp::env
