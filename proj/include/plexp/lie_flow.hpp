#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "plexp/math/ode.hpp"
#include "plexp/math/quad.hpp"
#include "plexp/phase_point.hpp"
#include "plexp/profiles.hpp"

namespace plexp {

// Optional slowly varying background entering the oscillation scale:
// Omega^2(tau, x) is the averaged ion density. Leave empty to use the
// initial density.
using OmegaBackground = std::function<double(double tau, double x)>;

enum class FastCoefficientMode {
    FrozenAtStart, // delta, Omega held at the orbit's initial x (default)
    Instantaneous  // delta(x(a)), Omega(x(a)); invariants then drift at O(eps^2)
};

struct FlowOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 0.0;
    long max_steps = 2000000;
};

enum class FlowKind { Full, Fast, Slow };

// Orbit with dense output in the group parameter a.
class FlowTrajectory {
public:
    PhasePoint at(double a) const;
    PhasePoint end() const { return at(a_end_); }
    double a_begin() const { return 0.0; }
    double a_end() const { return a_end_; }
    FlowKind kind() const { return kind_; }
    const math::OdeStats& stats() const { return traj_.stats(); }
    // Accepted-step grid, handy for drift scans.
    std::vector<double> nodes() const { return traj_.times(); }

private:
    friend FlowTrajectory integrate_full(const FieldFunctions&, const PhasePoint&, double,
                                         const FlowOptions&, const OmegaBackground&);
    friend FlowTrajectory integrate_fast(const FieldFunctions&, const PhasePoint&, double,
                                         FastCoefficientMode, const FlowOptions&);
    friend FlowTrajectory integrate_slow(const FieldFunctions&, const PhasePoint&, double,
                                         const FlowOptions&);
    math::Trajectory traj_;
    PhasePoint start_;
    FlowKind kind_ = FlowKind::Full;
    double a_end_ = 0.0;
};

// Full coupled flow: the fast oscillation rides on the slow expansion.
//   dt/da   = 1 + eps tau^2 xi_x
//   dtau/da = mu (1 + eps tau^2 xi_x)
//   dx/da   = eps ((delta/Omega) sin(Omega t) + mu tau xi)
//   du/da   = delta cos(Omega t) - eps mu tau u xi_x
//   dw/da   = mu (xi - eps tau w xi_x)
//   dp/da   = delta Omega sin(Omega t) - 3 mu eps tau p xi_x
// Caution: the oscillation phase Omega(x) t is evaluated at the moving
// position, so a long Lagrangian arc dephases once the oscillation has
// carried x far enough to change Omega (for Gaussian profiles this locks
// the phase and the orbit escapes after a few periods). The flow is meant
// to transport data at fixed labels; keep a within a few oscillation
// periods, or supply a slowly varying omega_bg.
FlowTrajectory integrate_full(const FieldFunctions& fields, const PhasePoint& start,
                              double a_end, const FlowOptions& opt = {},
                              const OmegaBackground& omega_bg = {});

// Fast subsystem only (t, x, u, p). With frozen coefficients the system is
// linear and J1..J4 are exact constants.
FlowTrajectory integrate_fast(const FieldFunctions& fields, const PhasePoint& start,
                              double a_end,
                              FastCoefficientMode mode = FastCoefficientMode::FrozenAtStart,
                              const FlowOptions& opt = {});

// Slow subsystem (tau, x, u, w, p) in the slow group parameter (= mu times
// the full one). The fast clock t is not evolved here.
FlowTrajectory integrate_slow(const FieldFunctions& fields, const PhasePoint& start,
                              double a_end, const FlowOptions& opt = {});

struct InvariantSet {
    FlowKind kind = FlowKind::Fast;
    std::vector<double> values;
    double x_ref = 0.0; // freeze point (fast) or quadrature anchor (slow)
};

// Fast invariants, coefficients frozen at x_freeze (defaults to point.x):
//   J1 = p + delta cos(Omega t)
//   J2 = x + (eps delta / Omega^2) cos(Omega t)
//   J3 = u - (delta / Omega) sin(Omega t)
//   J4 = g
InvariantSet fast_invariants(const PhasePoint& pt, const FieldFunctions& fields,
                             std::optional<double> x_freeze = {});

// Slow invariants with quadratures anchored at x_ref:
//   I1 = f          I2 = g          I3 = p xi^3      I5 = xi u
//   I4 = eps tau^2 / (2 xi^2) - int_{x_ref}^{x} dz / xi^3
//   I6 = xi w - (1/sqrt(2 eps)) int_{x_ref}^{x} dy [int_{x_ref}^{y} dz/xi^3]^{-1/2}
// Preconditions: x and x_ref on the same side of the origin with xi
// nonvanishing between them (throws SingularQuadratureError otherwise).
// I6's inner integral must be positive, i.e. x >= x_ref.
InvariantSet slow_invariants(const PhasePoint& pt, const FieldFunctions& fields, double x_ref,
                             const math::QuadOptions& quad = {});

} // namespace plexp
