#pragma once

#include <vector>

#include "dhlpp/env.hpp"
#include "dhlpp/passage.hpp"

namespace dhlpp::oracle {

using env::Environment;

struct OracleResult {
    int best = 0;
    std::vector<std::vector<Site>> maximal_paths;  // all paths attaining best
};

// Weight of an explicit admissible path under the model rules: boundary
// weights on an initial axis run (boundary mode only) plus bulk weights at
// sites entered by a diagonal step. The start site never contributes.
int path_weight(const Environment& e, const std::vector<Site>& path,
                passage::FieldMode mode);

// Exhaustive enumeration of all admissible step sequences from `start` to
// (m,n). Exponential; guarded by (m-start.x)+(n-start.y) <= 14.
OracleResult enumerate_lpp(const Environment& e, passage::FieldMode mode, Site start);

}  // namespace dhlpp::oracle
