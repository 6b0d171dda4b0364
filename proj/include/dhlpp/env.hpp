#pragma once

#include <cstdint>
#include <stdexcept>

#include "dhlpp/grid.hpp"
#include "dhlpp/rng.hpp"

namespace dhlpp::env {

// West-axis success probability paired with a south parameter u. It is an
// involution in u: ell(p, ell(p, u)) == u, which is what makes transposition
// map one boundary model onto another.
inline double ell(double p, double u) { return p * (1.0 - u) / (u + p * (1.0 - u)); }

struct Params {
    double p = 0.5;  // bulk Bernoulli parameter, 0 < p < 1
    double u = 0.5;  // south-axis parameter, 0 < u <= 1 (u = 1 degenerate)

    void validate() const {
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("Params: p must be in (0,1)");
        if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("Params: u must be in (0,1]");
    }
    double west() const { return ell(p, u); }
};

enum class Side { South, West };

struct PerturbationSpec {
    double epsilon = 0.0;
    Side side = Side::South;

    // Validity depends on the base parameter u of the environment being
    // perturbed; both sides need u + epsilon to stay a probability and the
    // auxiliary variable law to be well defined.
    void validate(double p, double u) const {
        if (!(epsilon > 0.0)) throw std::invalid_argument("PerturbationSpec: epsilon must be > 0");
        if (side == Side::South) {
            if (!(u + epsilon < 1.0))
                throw std::invalid_argument("PerturbationSpec: need u + epsilon < 1 for a south perturbation");
        } else {
            if (!(u < 1.0 && u + epsilon <= 1.0))
                throw std::invalid_argument("PerturbationSpec: need u + epsilon <= 1 for a west perturbation");
            const double kill = west_kill_probability(p, u);
            if (!(kill >= 0.0 && kill <= 1.0))
                throw std::invalid_argument("PerturbationSpec: west auxiliary probability out of [0,1]");
        }
    }

    // Probability that the multiplicative west variable erases a weight.
    // Chosen so that ell(p,u) * (1 - kill) == ell(p, u + epsilon) exactly,
    // i.e. the perturbed west marginal is Ber(ell(u+eps)).
    double west_kill_probability(double p, double u) const {
        return epsilon / ((1.0 - u) * (p + (1.0 - p) * (u + epsilon)));
    }
};

// Uniform field on [0..m]x[0..n]; shared randomness for couplings.
struct UniformField {
    Grid<double> eta;

    int m() const { return eta.nx() - 1; }
    int n() const { return eta.ny() - 1; }
};

enum class EnvTag : uint8_t { BoundaryModel, BulkOnly };

// A {0,1} weight lattice on [0..m]x[0..n]. The south row, west column and the
// bulk carry the marginals recorded here; the origin is always 0. Immutable
// after construction, safe to share across threads.
class Environment {
public:
    Environment(int m, int n, double p, double south_q, double west_q, EnvTag tag)
        : w_(m + 1, n + 1, 0), p_(p), south_q_(south_q), west_q_(west_q), tag_(tag) {}

    int m() const { return w_.nx() - 1; }
    int n() const { return w_.ny() - 1; }
    uint8_t at(int i, int j) const { return w_(i, j); }
    uint8_t operator()(int i, int j) const { return w_(i, j); }

    double p() const { return p_; }
    // South-axis marginal. For an unperturbed boundary model this is the
    // model parameter u.
    double south_q() const { return south_q_; }
    double west_q() const { return west_q_; }
    EnvTag tag() const { return tag_; }
    bool is_boundary_model() const { return tag_ == EnvTag::BoundaryModel; }

    Grid<uint8_t>& mutable_weights() { return w_; }
    const Grid<uint8_t>& weights() const { return w_; }

private:
    Grid<uint8_t> w_;
    double p_, south_q_, west_q_;
    EnvTag tag_;
};

// Draw order is fixed (south row, then per row j: west entry then bulk cells
// left to right) so that field and rolling evaluations consume identical
// streams.
Environment sample_environment(const Params& params, int m, int n, Rng& stream);

// Bulk-only environment: Ber(p) everywhere off the axes, axes zero.
Environment sample_bulk_environment(double p, int m, int n, Rng& stream);

UniformField sample_uniform_field(int m, int n, Rng& stream);

// Threshold the uniform field: region-dependent thresholds p / u / ell(u),
// origin forced to zero.
Environment realize(const UniformField& field, const Params& params);

// South weights become  H v omega  with H iid Ber(eps/(1-u)); perturbed south
// marginal is Ber(u+eps). Bulk and west untouched.
Environment perturb_south(const Environment& e, const PerturbationSpec& spec, Rng& stream);

// West weights become  omega * V  with V the multiplicative auxiliary law;
// perturbed west marginal is Ber(ell(u+eps)). Bulk and south untouched.
Environment perturb_west(const Environment& e, const PerturbationSpec& spec, Rng& stream);

// Swap axes; boundary roles swap with them (south <-> west marginals).
Environment transpose(const Environment& e);

}  // namespace dhlpp::env
