#pragma once

#include <array>

#include "dhlpp/rational.hpp"

namespace dhlpp::burke {

// Exact finite-state verification of the one-cell stationarity statements.
// The input law (omega, I_in, J_in) x beta is fully enumerable (16 atoms), so
// independence is an identity between rationals, not a statistical claim.

struct SingleCellCheck {
    bool marginals_ok = false;     // I_out ~ Ber(u), J_out ~ Ber(l(u))
    bool independence_ok = false;  // joint == product for all four cells
};

struct FullCellCheck {
    bool marginals_ok = false;     // alpha ~ Ber(p), I_out ~ Ber(u), J_out ~ Ber(l(u))
    bool independence_ok = false;  // joint == triple product for all eight cells
    // Joint law of (alpha, I_out, J_out), indexed a*4 + i*2 + j.
    std::array<Rat, 8> joint{};
};

Rat ell_exact(const Rat& p, const Rat& u);

SingleCellCheck single_cell_exact(const Rat& p, const Rat& u);
FullCellCheck full_cell_exact(const Rat& p, const Rat& u);

// Exact exhaustive evaluation of the variance identity pieces on a tiny
// rectangle: enumerates every weight configuration, computes Cov(S, North),
// the exit-sum functional of the down-most path, and Var(G). Used as the
// independent oracle pinning the A_N normalization.
struct SmallSystemMoments {
    Rat var_G;
    Rat cov_S_N;           // Cov(G_{m,0}, G_{m,n} - G_{0,n})
    Rat exit_one_minus_w;  // E sum_{i<=xi_e1} (1 - w_{i,0})
    Rat cov_W_E;           // Cov(G_{0,n}, G_{m,n} - G_{m,0})
    Rat exit_one_minus_w_up;  // E sum_{j<=xi^up_e2} (1 - w_{0,j}), up-most path
};

SmallSystemMoments enumerate_small_system(const Rat& p, const Rat& u, int m, int n);

}  // namespace dhlpp::burke
