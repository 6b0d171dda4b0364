#pragma once

#include <limits>
#include <vector>

#include "dhlpp/env.hpp"
#include "dhlpp/passage.hpp"

namespace dhlpp::geometry {

using env::Environment;
using passage::PassageField;

enum class PathKind : uint8_t { Maximal, Interface, ClusterBoundary };

struct LatticePath {
    PathKind kind = PathKind::Maximal;
    std::vector<Site> sites;  // forward orientation, steps in {e1, e2, e1+e2}
};

struct ExitPoint {
    int xi_e1 = 0;
    int xi_e2 = 0;
};

enum class Axis : uint8_t { Horizontal, Vertical };

// Sentinel for a projection line the interface never reaches inside the
// rectangle ("inf empty-set = infinity" convention).
inline constexpr int kUnreached = std::numeric_limits<int>::max();

struct InterfaceProjection {
    int v_of_n = kUnreached;
    int w_of_m = kUnreached;
};

struct PathStats {
    int xi_e1 = 0, xi_e2 = 0;
    std::vector<int> v0, v1;  // per horizontal level j = 0..n
    std::vector<int> w0, w1;  // per vertical level i = 0..m
};

// Backward walk from (m,n): down when J = 0, diagonal when J = 1 and the cell
// weight is 1, left otherwise; axis runs close the path to the origin.
// Returned forward; collected weight equals G_{m,n}.
LatticePath downmost_maximal_path(const PassageField& f, const Environment& e);

// Last axis site of a maximal path; (0,0) when the path enters the bulk
// immediately.
ExitPoint exit_point(const LatticePath& path);

// Min and max crossing coordinates of a path at a fixed level.
std::pair<int, int> level_crossings(const LatticePath& path, int level, Axis axis);

PathStats path_stats(const LatticePath& path, int m, int n);

// Competition interface from the origin, following the smaller neighbouring
// passage time with the tie rules; truncated at the first site on x = m or
// y = n.
LatticePath competition_interface(const PassageField& f);

// Cluster membership: 1 iff some maximal path from the origin to the site
// avoids a horizontal first step. Exact DP over tight predecessor steps.
Grid<uint8_t> upright_cluster(const PassageField& f, const Environment& e);

// Separating curve between the up/diagonal-reachable cluster and the
// horizontal-only cluster, built from the local (omega, I, J) step table.
LatticePath cluster_boundary(const PassageField& f, const Environment& e);

InterfaceProjection interface_projections(const LatticePath& interface, int m, int n);

// Curve ordering "a lies weakly above b": compares max/min profiles per
// x-column and per y-row over the common span.
bool path_weakly_above(const LatticePath& a, const LatticePath& b);

}  // namespace dhlpp::geometry
