#include "dhlpp/oracle.hpp"

#include <stdexcept>

namespace dhlpp::oracle {

int path_weight(const Environment& e, const std::vector<Site>& path, passage::FieldMode mode) {
    if (path.empty()) throw std::invalid_argument("path_weight: empty path");
    int w = 0;
    for (size_t k = 1; k < path.size(); ++k) {
        const Site a = path[k - 1], b = path[k];
        const int dx = b.x - a.x, dy = b.y - a.y;
        const bool diagonal = dx == 1 && dy == 1;
        if (!((dx == 1 && dy == 0) || (dx == 0 && dy == 1) || diagonal))
            throw std::invalid_argument("path_weight: inadmissible step");
        if (mode == passage::FieldMode::Boundary) {
            if (b.y == 0 && dx == 1) {
                w += e.at(b.x, 0);  // south run
                continue;
            }
            if (b.x == 0 && dy == 1) {
                w += e.at(0, b.y);  // west run
                continue;
            }
        }
        if (diagonal && b.x >= 1 && b.y >= 1) w += e.at(b.x, b.y);
    }
    return w;
}

namespace {

void enumerate_rec(const Environment& e, passage::FieldMode mode, std::vector<Site>& cur,
                   int acc, OracleResult& out) {
    const Site s = cur.back();
    if (s.x == e.m() && s.y == e.n()) {
        if (acc > out.best) {
            out.best = acc;
            out.maximal_paths.clear();
        }
        if (acc == out.best) out.maximal_paths.push_back(cur);
        return;
    }
    auto try_step = [&](int dx, int dy) {
        const Site t{s.x + dx, s.y + dy};
        if (t.x > e.m() || t.y > e.n()) return;
        int gain = 0;
        const bool diagonal = dx == 1 && dy == 1;
        if (mode == passage::FieldMode::Boundary && t.y == 0 && dx == 1)
            gain = e.at(t.x, 0);
        else if (mode == passage::FieldMode::Boundary && t.x == 0 && dy == 1)
            gain = e.at(0, t.y);
        else if (diagonal && t.x >= 1 && t.y >= 1)
            gain = e.at(t.x, t.y);
        cur.push_back(t);
        enumerate_rec(e, mode, cur, acc + gain, out);
        cur.pop_back();
    };
    try_step(1, 0);
    try_step(0, 1);
    try_step(1, 1);
}

}  // namespace

OracleResult enumerate_lpp(const Environment& e, passage::FieldMode mode, Site start) {
    if (mode == passage::FieldMode::Boundary && (start.x != 0 || start.y != 0))
        throw std::invalid_argument("enumerate_lpp: boundary mode enumerates from the origin");
    if (mode == passage::FieldMode::Bulk && (start.x < 1 || start.y < 1))
        throw std::invalid_argument("enumerate_lpp: bulk mode needs a bulk start");
    if ((e.m() - start.x) + (e.n() - start.y) > 14)
        throw std::invalid_argument("enumerate_lpp: instance too large for exhaustive enumeration");
    OracleResult out;
    out.best = -1;
    std::vector<Site> cur{start};
    enumerate_rec(e, mode, cur, 0, out);
    return out;
}

}  // namespace dhlpp::oracle
