#include "dhlpp/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace dhlpp::geometry {

LatticePath downmost_maximal_path(const PassageField& f, const Environment& e) {
    if (f.mode() != passage::FieldMode::Boundary)
        throw std::invalid_argument("downmost_maximal_path: boundary-mode field required");
    const int m = f.m(), n = f.n();
    std::vector<Site> rev;
    rev.reserve(size_t(m) + n + 1);
    int i = m, j = n;
    rev.push_back({i, j});
    while (i > 0 && j > 0) {
        if (f.J(i, j) == 0) {
            --j;  // down: G unchanged
        } else if (e.at(i, j) == 1) {
            --i;
            --j;  // diagonal: J = 1 forces I_{i,j-1} = 0, so the step is tight
        } else {
            --i;  // left: here I_{i,j} = 0 necessarily
        }
        rev.push_back({i, j});
    }
    while (i > 0) rev.push_back({--i, 0});
    while (j > 0) rev.push_back({0, --j});
    LatticePath p;
    p.kind = PathKind::Maximal;
    p.sites.assign(rev.rbegin(), rev.rend());
    return p;
}

ExitPoint exit_point(const LatticePath& path) {
    if (path.kind != PathKind::Maximal)
        throw std::invalid_argument("exit_point: maximal path required");
    ExitPoint xp;
    for (size_t k = 1; k < path.sites.size(); ++k) {
        const Site s = path.sites[k];
        if (s.y == 0)
            xp.xi_e1 = s.x;
        else if (s.x == 0)
            xp.xi_e2 = s.y;
        else
            break;
    }
    return xp;
}

std::pair<int, int> level_crossings(const LatticePath& path, int level, Axis axis) {
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const Site& s : path.sites) {
        const int along = axis == Axis::Horizontal ? s.y : s.x;
        const int coord = axis == Axis::Horizontal ? s.x : s.y;
        if (along == level) {
            lo = std::min(lo, coord);
            hi = std::max(hi, coord);
        }
    }
    if (lo > hi) throw std::invalid_argument("level_crossings: path does not cross the level");
    return {lo, hi};
}

PathStats path_stats(const LatticePath& path, int m, int n) {
    PathStats st;
    const ExitPoint xp = exit_point(path);
    st.xi_e1 = xp.xi_e1;
    st.xi_e2 = xp.xi_e2;
    st.v0.assign(size_t(n) + 1, std::numeric_limits<int>::max());
    st.v1.assign(size_t(n) + 1, std::numeric_limits<int>::min());
    st.w0.assign(size_t(m) + 1, std::numeric_limits<int>::max());
    st.w1.assign(size_t(m) + 1, std::numeric_limits<int>::min());
    for (const Site& s : path.sites) {
        st.v0[s.y] = std::min(st.v0[s.y], s.x);
        st.v1[s.y] = std::max(st.v1[s.y], s.x);
        st.w0[s.x] = std::min(st.w0[s.x], s.y);
        st.w1[s.x] = std::max(st.w1[s.x], s.y);
    }
    return st;
}

LatticePath competition_interface(const PassageField& f) {
    if (f.mode() != passage::FieldMode::Boundary)
        throw std::invalid_argument("competition_interface: boundary-mode field required");
    const int m = f.m(), n = f.n();
    LatticePath p;
    p.kind = PathKind::Interface;
    int x = 0, y = 0;
    p.sites.push_back({x, y});
    while (x < m && y < n) {
        const int32_t up = f.G(x, y + 1);
        const int32_t right = f.G(x + 1, y);
        const int32_t here = f.G(x, y);
        if (up < right || (up == right && up == here)) {
            ++y;
        } else if (right < up) {
            ++x;
        } else {  // up == right > here
            ++x;
            ++y;
        }
        p.sites.push_back({x, y});
    }
    return p;
}

Grid<uint8_t> upright_cluster(const PassageField& f, const Environment& e) {
    const int m = f.m(), n = f.n();
    Grid<uint8_t> R(m + 1, n + 1, 0);
    R(0, 0) = 1;
    for (int j = 1; j <= n; ++j) R(0, j) = 1;
    // South axis stays 0: its sites are reached only by horizontal runs.
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= m; ++i) {
            const int32_t g = f.G(i, j);
            uint8_t r = 0;
            if (g == f.G(i - 1, j) && R(i - 1, j)) r = 1;                       // tight e1 step
            if (!r && g == f.G(i, j - 1) && R(i, j - 1)) r = 1;                 // tight e2 step
            if (!r && g == f.G(i - 1, j - 1) + e.at(i, j) && R(i - 1, j - 1)) r = 1;  // tight diagonal
            R(i, j) = r;
        }
    }
    return R;
}

LatticePath cluster_boundary(const PassageField& f, const Environment& e) {
    if (f.mode() != passage::FieldMode::Boundary)
        throw std::invalid_argument("cluster_boundary: boundary-mode field required");
    const int m = f.m(), n = f.n();
    const auto R = upright_cluster(f, e);
    LatticePath p;
    p.kind = PathKind::ClusterBoundary;
    int x = 0, y = 0;
    p.sites.push_back({x, y});
    while (x < m && y < n) {
        if (y == 0) {
            // On the axis the local step table drives the whole move.
            const int w = e.at(x + 1, 1);
            const int i = f.I(x + 1, 0);
            const int j = f.J(x, 1);
            if (i == 0 && j == 1) {
                ++x;
            } else if (w == 0 && i == 1 && j == 0) {
                ++y;
            } else {
                ++x;
                ++y;
            }
        } else if (R(x + 1, y)) {
            ++x;  // horizontal run up to the rightmost cluster site of the level
        } else {
            // Level change at the cluster boundary, step per the table
            // (here I_{x+1,y} = 1 necessarily).
            const int w = e.at(x + 1, y + 1);
            const int i = f.I(x + 1, y);
            const int j = f.J(x, y + 1);
            if (w == 0 && i == 1 && j == 0) {
                ++y;
            } else {
                ++x;
                ++y;
            }
        }
        p.sites.push_back({x, y});
    }
    // Finish the top-level run so the curve separates the whole rectangle:
    // on the north edge the cluster may extend further right.
    while (y == n && x < m && R(x + 1, n)) {
        ++x;
        p.sites.push_back({x, y});
    }
    return p;
}

InterfaceProjection interface_projections(const LatticePath& interface, int m, int n) {
    InterfaceProjection pr;
    for (const Site& s : interface.sites) {
        if (s.y == n && s.x < pr.v_of_n) pr.v_of_n = s.x;
        if (s.x == m && s.y < pr.w_of_m) pr.w_of_m = s.y;
    }
    return pr;
}

bool path_weakly_above(const LatticePath& a, const LatticePath& b) {
    // Profiles per x: min/max y; per y: min/max x.
    auto profile = [](const LatticePath& p, bool by_x) {
        std::vector<std::pair<int, std::pair<int, int>>> out;
        for (const Site& s : p.sites) {
            const int key = by_x ? s.x : s.y;
            const int val = by_x ? s.y : s.x;
            if (!out.empty() && out.back().first == key) {
                out.back().second.first = std::min(out.back().second.first, val);
                out.back().second.second = std::max(out.back().second.second, val);
            } else {
                out.push_back({key, {val, val}});
            }
        }
        return out;
    };
    const auto ax = profile(a, true), bx = profile(b, true);
    size_t ia = 0, ib = 0;
    while (ia < ax.size() && ib < bx.size()) {
        if (ax[ia].first < bx[ib].first) { ++ia; continue; }
        if (bx[ib].first < ax[ia].first) { ++ib; continue; }
        // a above b: a's y-range must dominate b's at equal x.
        if (ax[ia].second.first < bx[ib].second.first) return false;
        if (ax[ia].second.second < bx[ib].second.second) return false;
        ++ia; ++ib;
    }
    const auto ay = profile(a, false), by = profile(b, false);
    ia = 0; ib = 0;
    while (ia < ay.size() && ib < by.size()) {
        if (ay[ia].first < by[ib].first) { ++ia; continue; }
        if (by[ib].first < ay[ia].first) { ++ib; continue; }
        // a above b: at equal y, a's x-range must sit weakly left.
        if (ay[ia].second.first > by[ib].second.first) return false;
        if (ay[ia].second.second > by[ib].second.second) return false;
        ++ia; ++ib;
    }
    return true;
}

}  // namespace dhlpp::geometry
