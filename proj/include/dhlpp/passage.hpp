#pragma once

#include <cstdint>
#include <utility>

#include "dhlpp/env.hpp"
#include "dhlpp/grid.hpp"

namespace dhlpp::passage {

using env::Environment;

enum class FieldMode : uint8_t { Boundary, Bulk };

// Passage times on a rectangle. Boundary mode covers [0..m]x[0..n] with axis
// partial sums as initial data; bulk mode covers [sx..m]x[sy..n] with
// G(start) = 0 and weight collected only on diagonal entries.
class PassageField {
public:
    PassageField(FieldMode mode, Site start, int m, int n)
        : mode_(mode), start_(start), m_(m), n_(n),
          G_(m - start.x + 1, n - start.y + 1, 0) {}

    FieldMode mode() const { return mode_; }
    Site start() const { return start_; }
    int m() const { return m_; }
    int n() const { return n_; }

    int32_t G(int i, int j) const { return G_(i - start_.x, j - start_.y); }
    int32_t& G_mut(int i, int j) { return G_(i - start_.x, j - start_.y); }

    // Last passage gradients; defined for i > start.x (resp. j > start.y).
    int I(int i, int j) const { return G(i, j) - G(i - 1, j); }
    int J(int i, int j) const { return G(i, j) - G(i, j - 1); }

private:
    FieldMode mode_;
    Site start_;
    int m_, n_;
    Grid<int32_t> G_;
};

struct CompassIncrements {
    int64_t W = 0, N = 0, E = 0, S = 0;
    int64_t G() const { return W + N; }
};

// Full-field boundary DP: G on axes equals boundary partial sums, interior
// cells follow  G_{i,j} = max(G_{i,j-1}, G_{i-1,j}, G_{i-1,j-1} + w_{i,j}).
PassageField compute_passage(const Environment& e);

// Bulk DP from `start` (both coordinates >= 1): start row/column carry G = 0,
// a site's weight counts only when the site is entered diagonally.
PassageField compute_bulk_passage(const Environment& e, Site start);

// One cell of the gradient recursion.
inline std::pair<int, int> increment_step(int omega, int j_west, int i_south) {
    const int m = omega > j_west ? (omega > i_south ? omega : i_south)
                                 : (j_west > i_south ? j_west : i_south);
    return {m - j_west, m - i_south};
}

// alpha_{i-1,j-1} for cells (i,j) in [1..m]x[1..n]: forced to 1 when both
// incoming increments are 1, a fresh Ber(p) on the five-triple event, 0 on
// the all-zero triple.
Grid<uint8_t> alpha_field(const PassageField& f, const Environment& e, Rng& stream);

CompassIncrements compass(const PassageField& f);

// Total boundary weight collected by a path exiting the axes at w.
int boundary_sum(const Environment& e, Site w);

// Reversed process: G*, increments and alpha-bulk packaged as a boundary
// model of its own, so path extraction and the DP apply unchanged.
struct ReversedField {
    PassageField field;     // G*_{i,j} = G_{m,n} - G_{m-i,n-j}
    Environment environment;  // south = I*, west = J*, bulk = reversed alpha
};

ReversedField reverse(const PassageField& f, const Environment& e, const Grid<uint8_t>& alpha);

// Rolling evaluations for scans that only need the rectangle corner values;
// O(n) memory, weights drawn on the fly in the canonical order.
struct CornerValues {
    int32_t G = 0;  // G_{m,n}
    int32_t S = 0;  // G_{m,0}
    int32_t W = 0;  // G_{0,n}
};

CornerValues boundary_corner(double p, double south_q, double west_q, int m, int n, Rng& stream);

// G from (1,1) to (m,n) in a bulk-only environment, rolling rows.
int32_t bulk_corner(double p, int m, int n, Rng& stream);

}  // namespace dhlpp::passage
