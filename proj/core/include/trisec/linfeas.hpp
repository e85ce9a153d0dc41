#pragma once

#include <optional>
#include <vector>

#include "trisec/linalg.hpp"

namespace trisec {

enum class Rel { GE, LE, EQ };

struct LinearConstraint {
    Vec a;
    Rel rel = Rel::GE;
    Scalar b;
};

// Decides feasibility of {x free : a.x rel b for every constraint} exactly
// over Q(sqrt 2) and returns a feasible point if one exists.  Phase-1 simplex
// with Bland's rule, so it terminates on every input.
std::optional<Vec> solve_feasibility(const std::vector<LinearConstraint>& constraints,
                                     size_t nvars);

} // namespace trisec
