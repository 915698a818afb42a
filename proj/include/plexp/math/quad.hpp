#pragma once

#include <functional>
#include <vector>

namespace plexp::math {

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
    int evaluations = 0;
};

struct QuadOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    int max_intervals = 4000;
};

// Globally adaptive Gauss-Kronrod 7/15 on [a, b] (a > b allowed, sign
// flips). Throws ConvergenceError when the interval budget is exhausted
// before the tolerance is met.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// Single non-adaptive 15-point Kronrod panel; exact enough for smooth
// integrands over short intervals and free of subdivision branching.
QuadResult kronrod_panel(const std::function<double(double)>& f, double a, double b);

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on the Legendre
// recurrence; results cached per n). n >= 1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

} // namespace plexp::math
