#pragma once

#include <vector>

#include "plexp/bvp.hpp"
#include "plexp/profiles.hpp"

namespace plexp {

// Reconstruction of the fast electron dynamics on top of the slow ion
// background. The full field and electron velocity at a lab point x_bar
// reached by label x' are the slow parts plus oscillatory integrals along
// the label's history x'' in [x', x_bar]:
//
//   p = (xi'^3/xi_bar^3) p' + (1/xi_bar^3) int dx'' A(x'') sin(W(x'') t(x''))
//   u = (xi'/xi_bar)     u' + (1/xi_bar)   int dx'' B(x'') cos(W(x'') t(x''))
//
// with A = dbar W xi^2(x'') / (eps mu tau(x'')), B = dbar / (eps mu tau(x'')),
// the clock tau(x'') read off the slow map at fixed label, t = tau/mu, and
// W(x'')^2 the averaged ion density at the lab point x'' when the label
// passes it. The 1/tau endpoint singularity is integrable (tau ~ sqrt of
// the distance from the label) and is removed by the substitution
// x'' = x' + s^2. The phase W t reaches hundreds of radians, so integration
// proceeds panel-by-panel between consecutive phase multiples of 2 pi with
// Gauss-Legendre nodes in each panel; plain adaptive quadrature would alias.

// Transport rule for the drive amplitude dbar along the path. The averaged
// theory fixes only the frequency; two defensible amplitude rules exist.
enum class DeltaTransport {
    LabelFrozen, // dbar(x'') = delta(x'), constant along the path
    FieldScaled, // dbar(x'') = delta(x') (xi'/xi(x''))^3, field-invariant scaling
};

struct FastOptions {
    // Gauss-Legendre nodes per 2 pi phase panel. Every panel spans at most
    // one oscillation period, so this is the points-per-period floor.
    int points_per_period = 16;
    // Path-table nodes per oscillation period (pchip resolution of phase
    // and amplitude between quadrature panels).
    int table_per_period = 12;
    // Hard cap on path-table size; beyond it the oscillation is declared
    // unresolvable and SingularQuadratureError is thrown instead of an
    // aliased answer.
    int max_table_nodes = 250000;
    // The reconstruction assumes |delta(x') eps| small (lab position and
    // averaged position identified); beyond this threshold the output is
    // flagged, not rejected.
    double regime_threshold = 0.05;
    DeltaTransport transport = DeltaTransport::LabelFrozen;
    // Tolerance handed to the slow map when resolving x_bar from a label.
    double map_tol = 1e-10;
};

// Slow clock read along a label's path: the time at which label x_prime
// passes lab position x_dprime.
struct ClockSample {
    double tau = 0.0;
    double t = 0.0; // fast time, tau / mu
};

// tau(x'') = xi(x'') sqrt(2 G / eps), G = int_{x'}^{x''} dz / xi^3; t = tau/mu.
// Requires x_dprime >= x_prime > 0 (equality gives tau = 0).
ClockSample clock_along_slow(double x_prime, double x_dprime, const FieldFunctions& fields);

// One reconstructed output point.
struct FastPoint {
    double x_prime = 0.0;
    double x_bar = 0.0;
    double tau = 0.0;    // slow time at which the label reaches x_bar
    double p_full = 0.0; // slow field plus oscillation
    double p_slow = 0.0; // (xi'/xi_bar)^3 p'
    double u = 0.0;      // electron velocity along the path
    double n_e_av = 0.0; // averaged electron density
    double u_e_av = 0.0; // averaged electron velocity
    int periods = 0;     // whole oscillation periods resolved on the path
    bool regime_warning = false;
};

struct ElectronAverages {
    double n_e_av = 0.0;
    double u_e_av = 0.0;
};

// Full field at the lab point x_bar reached by label x_prime. The primed
// state supplies the initial averaged field p'.
double fast_field(double x_prime, double x_bar, const FieldFunctions& fields,
                  const PrimedState& primed, const FastOptions& options = {});

// Electron velocity at the same point for an electron with initial
// velocity u_prime (population mean is zero).
double fast_velocity(double x_prime, double x_bar, const FieldFunctions& fields,
                     double u_prime = 0.0, const FastOptions& options = {});

// Averaged electron density and velocity; the density scales exactly like
// the averaged ion density, so quasi-neutrality of the averages is
// inherited from the initial profiles.
ElectronAverages electron_diagnostics(double x_prime, double x_bar,
                                      const FieldFunctions& fields,
                                      const FastOptions& options = {});

// Curve at fixed slow time tau over a grid of labels: each label is mapped
// to its lab position and all point quantities are evaluated there.
struct FastReconstruction {
    double tau = 0.0;
    int points_per_period = 0;
    std::vector<FastPoint> points;
};

FastReconstruction reconstruct_fast(const FieldFunctions& fields, const PrimedState& primed,
                                    double tau, const std::vector<double>& labels,
                                    const FastOptions& options = {});

} // namespace plexp
