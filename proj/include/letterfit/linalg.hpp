#pragma once

#include <vector>

namespace letterfit::linalg {

/// Solves A x = b for a small dense k-by-k system (row-major A) by Gaussian
/// elimination with partial pivoting. A and b are clobbered; the solution
/// lands in b. Returns false on a singular pivot.
bool solve_inplace(std::vector<double>& A, std::vector<double>& b, int k);

/// Ordinary least squares through the normal equations. X is m-by-k
/// row-major. Throws InsufficientDataError when m < k or the design is
/// singular.
std::vector<double> ols(const std::vector<double>& X, const std::vector<double>& y, int m, int k);

} // namespace letterfit::linalg
