#include "dhlpp/passage.hpp"

#include <algorithm>
#include <stdexcept>

namespace dhlpp::passage {

PassageField compute_passage(const Environment& e) {
    if (!e.is_boundary_model())
        throw std::invalid_argument("compute_passage: boundary-model environment required");
    const int m = e.m(), n = e.n();
    PassageField f(FieldMode::Boundary, Site{0, 0}, m, n);
    int32_t acc = 0;
    for (int i = 1; i <= m; ++i) {
        acc += e.at(i, 0);
        f.G_mut(i, 0) = acc;
    }
    acc = 0;
    for (int j = 1; j <= n; ++j) {
        acc += e.at(0, j);
        f.G_mut(0, j) = acc;
        const uint8_t* wrow = e.weights().row(j);
        for (int i = 1; i <= m; ++i) {
            const int32_t a = f.G(i, j - 1);
            const int32_t b = f.G(i - 1, j);
            const int32_t c = f.G(i - 1, j - 1) + wrow[i];
            f.G_mut(i, j) = std::max(std::max(a, b), c);
        }
    }
    return f;
}

PassageField compute_bulk_passage(const Environment& e, Site start) {
    if (start.x < 1 || start.y < 1 || start.x > e.m() || start.y > e.n())
        throw std::invalid_argument("compute_bulk_passage: start must lie in the bulk");
    const int m = e.m(), n = e.n();
    PassageField f(FieldMode::Bulk, start, m, n);
    // Start row and column collect nothing: no cell there can be entered
    // diagonally from inside the region.
    for (int j = start.y + 1; j <= n; ++j) {
        const uint8_t* wrow = e.weights().row(j);
        for (int i = start.x + 1; i <= m; ++i) {
            const int32_t a = f.G(i, j - 1);
            const int32_t b = f.G(i - 1, j);
            const int32_t c = f.G(i - 1, j - 1) + wrow[i];
            f.G_mut(i, j) = std::max(std::max(a, b), c);
        }
    }
    return f;
}

Grid<uint8_t> alpha_field(const PassageField& f, const Environment& e, Rng& stream) {
    if (f.mode() != FieldMode::Boundary)
        throw std::invalid_argument("alpha_field: boundary-mode field required");
    const int m = f.m(), n = f.n();
    Grid<uint8_t> a(m, n, 0);
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= m; ++i) {
            const int in_i = f.I(i, j - 1);
            const int in_j = f.J(i - 1, j);
            uint8_t v;
            if (in_i == 1 && in_j == 1) {
                v = 1;
            } else if (e.at(i, j) == 0 && in_i == 0 && in_j == 0) {
                v = 0;
            } else {
                v = stream.bernoulli(e.p());
            }
            a(i - 1, j - 1) = v;
        }
    }
    return a;
}

CompassIncrements compass(const PassageField& f) {
    if (f.mode() != FieldMode::Boundary)
        throw std::invalid_argument("compass: boundary-mode field required");
    CompassIncrements c;
    const int m = f.m(), n = f.n();
    c.W = f.G(0, n);
    c.S = f.G(m, 0);
    c.N = f.G(m, n) - c.W;
    c.E = f.G(m, n) - c.S;
    return c;
}

int boundary_sum(const Environment& e, Site w) {
    if (w.x != 0 && w.y != 0) throw std::invalid_argument("boundary_sum: site must lie on an axis");
    if (w.x < 0 || w.y < 0 || w.x > e.m() || w.y > e.n())
        throw std::invalid_argument("boundary_sum: site outside rectangle");
    int s = 0;
    for (int i = 1; i <= w.x; ++i) s += e.at(i, 0);
    for (int j = 1; j <= w.y; ++j) s += e.at(0, j);
    return s;
}

ReversedField reverse(const PassageField& f, const Environment& e, const Grid<uint8_t>& alpha) {
    if (f.mode() != FieldMode::Boundary)
        throw std::invalid_argument("reverse: boundary-mode field required");
    const int m = f.m(), n = f.n();
    Environment renv(m, n, e.p(), e.south_q(), e.west_q(), env::EnvTag::BoundaryModel);
    auto& w = renv.mutable_weights();
    // South axis of the reversed rectangle carries I*_{i,0} = I_{m-i+1,n},
    // the west axis J*_{0,j} = J_{m,n-j+1}; the bulk is the reversed alpha.
    for (int i = 1; i <= m; ++i) w(i, 0) = uint8_t(f.I(m - i + 1, n));
    for (int j = 1; j <= n; ++j) {
        w(0, j) = uint8_t(f.J(m, n - j + 1));
        for (int i = 1; i <= m; ++i) w(i, j) = alpha(m - i, n - j);
    }
    PassageField rf(FieldMode::Boundary, Site{0, 0}, m, n);
    const int32_t corner = f.G(m, n);
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= m; ++i) rf.G_mut(i, j) = corner - f.G(m - i, n - j);
    return ReversedField{std::move(rf), std::move(renv)};
}

CornerValues boundary_corner(double p, double south_q, double west_q, int m, int n, Rng& stream) {
    std::vector<int32_t> row(size_t(m) + 1);
    row[0] = 0;
    for (int i = 1; i <= m; ++i) row[i] = row[i - 1] + stream.bernoulli(south_q);
    CornerValues cv;
    cv.S = row[m];
    for (int j = 1; j <= n; ++j) {
        int32_t diag = row[0];  // G_{0,j-1}
        row[0] += stream.bernoulli(west_q);
        for (int i = 1; i <= m; ++i) {
            const int32_t up = row[i];  // G_{i,j-1}
            const int32_t cand = diag + stream.bernoulli(p);
            int32_t g = row[i - 1] > up ? row[i - 1] : up;
            if (cand > g) g = cand;
            row[i] = g;
            diag = up;
        }
    }
    cv.W = row[0];
    cv.G = row[m];
    return cv;
}

int32_t bulk_corner(double p, int m, int n, Rng& stream) {
    if (m < 1 || n < 1) throw std::invalid_argument("bulk_corner: dims must be >= (1,1)");
    // Region [1..m]x[1..n]; row j=1 is all zeros. Weights are drawn for every
    // bulk cell in the canonical row-major order so the stream matches the
    // full-field path.
    std::vector<int32_t> row(size_t(m), 0);  // index i-1 for i in [1..m]
    for (int i = 1; i <= m; ++i) (void)stream.bernoulli(p);  // row j = 1
    for (int j = 2; j <= n; ++j) {
        int32_t diag = row[0];
        row[0] = 0;
        (void)stream.bernoulli(p);  // cell (1, j), never collectable
        for (int i = 2; i <= m; ++i) {
            const int32_t up = row[size_t(i) - 1];
            const int32_t cand = diag + stream.bernoulli(p);
            int32_t g = row[size_t(i) - 2] > up ? row[size_t(i) - 2] : up;
            if (cand > g) g = cand;
            row[size_t(i) - 1] = g;
            diag = up;
        }
    }
    return row[size_t(m) - 1];
}

}  // namespace dhlpp::passage
