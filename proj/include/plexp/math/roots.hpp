#pragma once

#include <functional>
#include <vector>

namespace plexp::math {

// Brent's method on a sign-changing bracket [a, b]. Converges to
// |interval| <= x_tol + 4 eps |x|. Throws std::invalid_argument when the
// bracket does not change sign, ConvergenceError on iteration exhaustion.
double brent(const std::function<double(double)>& f, double a, double b,
             double x_tol = 1e-13, int max_iter = 200);

// Grow [a, b] geometrically away from a until f changes sign across it.
// Returns the bracketing pair through the out-params; throws
// ConvergenceError when cap is reached without a sign change.
void expand_bracket(const std::function<double(double)>& f, double a, double& b,
                    double cap, double& fa, double& fb);

// Thomas algorithm for a tridiagonal system (in-place on copies).
// diag/lower/upper sized n, n-1, n-1. Throws on zero pivot.
void tridiag_solve(std::vector<double> lower, std::vector<double> diag,
                   std::vector<double> upper, std::vector<double>& rhs);

} // namespace plexp::math
