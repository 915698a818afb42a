#pragma once

#include <array>
#include <functional>

#include "plexp/lie_flow.hpp"
#include "plexp/phase_point.hpp"
#include "plexp/profiles.hpp"

namespace plexp {

// Infinitesimal generator coordinates in the basis
//   xi1 d/dt + xi2 d/dx + xi3 d/du + xi4 d/dw + xi5 d/dtau
//   + eta_g d/dg + eta_p d/dp + eta_f d/df.
struct GeneratorCoordinates {
    double xi1 = 0.0, xi2 = 0.0, xi3 = 0.0, xi4 = 0.0, xi5 = 0.0;
    double eta_g = 0.0, eta_p = 0.0, eta_f = 0.0;
};

// Two-scale split: the oscillatory (fast) part and the averaged (slow)
// part satisfy separate determining-equation blocks.
struct GeneratorSplit {
    GeneratorCoordinates fast, slow;
    GeneratorCoordinates total() const;
};

using GeneratorFn = std::function<GeneratorSplit(const PhasePoint&)>;

// The two-scale expansion generator. Slow part:
//   xi1 = 1 + eps tau^2 xi_x      xi2 = eps mu tau xi
//   xi3 = -eps mu tau u xi_x      xi4 = mu (xi - eps tau w xi_x)
//   xi5 = mu xi1                  eta_p = -3 mu eps tau p xi_x
// Fast part:
//   xi2 = eps (delta/Omega) sin(Omega t)   xi3 = delta cos(Omega t)
//   eta_p = delta Omega sin(Omega t)
// Omega^2 is the ion density: the initial one by default, or a supplied
// slowly varying background.
GeneratorFn approximate_generator(const FieldFunctions& fields,
                                  const OmegaBackground& omega_bg = {});

// mu = 0 limit (immobile ions): pure oscillation around a fixed profile.
// delta and Omega are constants here; matches approximate_generator with
// mu = 0 and a flat xi.
GeneratorFn electron_plasma_generator(double delta, double Omega, double eps);

// Quasi-neutral (eps-ordered) exact symmetry with group constant beta.
// The d/dt coordinate honors xi5 = mu xi1 exactly, so mu must be positive.
GeneratorFn quasineutral_generator(double beta, const PlasmaParams& params);

struct ResidualReport {
    std::array<double, 2> fast{{0.0, 0.0}};          // fast determining block
    std::array<double, 4> slow{{0.0, 0.0, 0.0, 0.0}}; // slow determining block
    double eps = 0.0, mu = 0.0;
    double h = 0.0;                 // relative differentiation step used
    bool richardson_warning = false; // step-halving failed to confirm a derivative
    double fast_max() const;
    double slow_max() const;
};

// Numerical residuals of the two fast determining equations at one point.
// Derivatives of the supplied coordinates are central differences with one
// Richardson extrapolation level; h_rel scales with each coordinate.
ResidualReport determining_residual_fast(const GeneratorFn& gen, const PhasePoint& pt,
                                         const PlasmaParams& params, double h_rel = 1e-5);

// Numerical residuals of the four slow determining equations.
ResidualReport determining_residual_slow(const GeneratorFn& gen, const PhasePoint& pt,
                                         const PlasmaParams& params, double h_rel = 1e-5);

} // namespace plexp
