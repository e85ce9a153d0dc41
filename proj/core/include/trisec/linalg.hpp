#pragma once

#include <optional>
#include <vector>

#include "trisec/scalar.hpp"

namespace trisec {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>; // row-major

// Exact determinant by Gaussian elimination over Q(sqrt 2).
Scalar det(Mat m);

size_t rank(Mat m);

// Basis of the right kernel {x : M x = 0}.
std::vector<Vec> kernel_basis(Mat m);

// One solution of M x = b if the system is consistent (M may be any shape).
std::optional<Vec> solve(Mat m, Vec b);

} // namespace trisec
