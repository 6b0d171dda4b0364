#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dhlpp {

struct Site {
    int x = 0;
    int y = 0;
    friend bool operator==(const Site& a, const Site& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }
};

// Dense 2D array indexed (x, y), row-contiguous in x so DP inner loops over x
// are cache friendly.
template <class T>
class Grid {
public:
    Grid() = default;
    Grid(int nx, int ny, T fill = T{}) : nx_(nx), ny_(ny), v_(size_t(nx) * size_t(ny), fill) {}

    T& operator()(int x, int y) {
        assert(x >= 0 && x < nx_ && y >= 0 && y < ny_);
        return v_[size_t(y) * nx_ + x];
    }
    const T& operator()(int x, int y) const {
        assert(x >= 0 && x < nx_ && y >= 0 && y < ny_);
        return v_[size_t(y) * nx_ + x];
    }

    T* row(int y) { return v_.data() + size_t(y) * nx_; }
    const T* row(int y) const { return v_.data() + size_t(y) * nx_; }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    bool empty() const { return v_.empty(); }

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<T> v_;
};

}  // namespace dhlpp
