#pragma once

#include <memory>
#include <vector>

#include "plexp/math/interp.hpp"
#include "plexp/profiles.hpp"

namespace plexp {

struct GridSpec {
    double x_max = 40.0; // far boundary of the half-line grid
    int n = 4000;        // intervals; n + 1 nodes
};

// Potential balancing the ion background against Boltzmann electrons:
//   eps^2 phi'' + ni0(x) - exp(phi) = 0,  phi'(0) = phi'(x_max) = 0.
// phi is the half-line restriction of an even function; the free constant
// C = phi(0) is an output of the solve, not an input.
struct PotentialSolution {
    std::vector<double> x;
    std::vector<double> phi;
    double residual = 0.0;     // discrete residual max-norm at the returned iterate
    int newton_iterations = 0;
    double C = 0.0;            // phi(0)
    // Set when the residual stalls at rounding level above the requested
    // tolerance: the iterate is converged, the grid limits the residual.
    bool tol_plateau = false;

    // Even-extended C1 evaluation; |x| beyond x_max throws DomainExitError.
    double value(double x) const;
    double slope(double x) const; // odd in x

private:
    friend PotentialSolution solve_quasineutral_potential(const FieldFunctions&,
                                                          const GridSpec&, double);
    std::shared_ptr<const math::MonotoneCubic> interp_;
};

// Damped Newton on second-order central differences with Neumann ghost
// points. Requires a decaying background: ni0(x_max) < 1e-8 unless the
// profile is Lorentz (algebraic decay; the Neumann truncation there costs
// O(1/x_max^2) near the far boundary).
PotentialSolution solve_quasineutral_potential(const FieldFunctions& fields,
                                               const GridSpec& grid = {},
                                               double tol = 1e-10);

// Labels of the slow solution at tau -> 0:
//   s(x') = x' + eps delta(x') / Omega^2(x'),
//   p'(x') = -eps dphi/ds at s(x')      (odd in x'),
//   f'(x', w) = f0(s, w),  g'(x', u) = g0(s, u).
class PrimedState {
public:
    PrimedState(PotentialSolution potential, const FieldFunctions& fields);

    double shift(double xp) const;
    double p_prime(double xp) const;
    double f_prime(double xp, double w) const;
    double g_prime(double xp, double u) const;

    const PotentialSolution& potential() const { return potential_; }

private:
    PotentialSolution potential_;
    FieldFunctions fields_;
    InitialDistributions initial_;
};

} // namespace plexp
