#include "plexp/lie_flow.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "plexp/errors.hpp"

namespace plexp {

namespace {

math::OdeOptions to_ode(const FlowOptions& f) {
    math::OdeOptions o;
    o.rel_tol = f.rel_tol;
    o.abs_tol = f.abs_tol;
    o.max_step = f.max_step;
    o.max_steps = f.max_steps;
    return o;
}

} // namespace

PhasePoint FlowTrajectory::at(double a) const {
    const auto y = traj_.at(a);
    PhasePoint pt = start_;
    pt.a = a;
    switch (kind_) {
    case FlowKind::Full:
        pt.t = y[0]; pt.tau = y[1]; pt.x = y[2]; pt.u = y[3]; pt.w = y[4]; pt.p = y[5];
        break;
    case FlowKind::Fast:
        pt.t = y[0]; pt.x = y[1]; pt.u = y[2]; pt.p = y[3];
        break;
    case FlowKind::Slow:
        pt.tau = y[0]; pt.x = y[1]; pt.u = y[2]; pt.w = y[3]; pt.p = y[4];
        break;
    }
    return pt;
}

FlowTrajectory integrate_full(const FieldFunctions& fields, const PhasePoint& start,
                              double a_end, const FlowOptions& opt,
                              const OmegaBackground& omega_bg) {
    fields.params.validate();
    const double eps = fields.params.eps;
    const double mu = fields.params.mu;
    auto rhs = [fields, eps, mu, omega_bg](double, const std::vector<double>& y,
                                           std::vector<double>& d) {
        const double t = y[0], tau = y[1], x = y[2], u = y[3], w = y[4], p = y[5];
        const double xi = fields.xi(x);
        const double xi_x = fields.dxi(x);
        const double delta = fields.delta(x);
        const double Om = omega_bg ? std::sqrt(omega_bg(tau, x)) : fields.Omega0(x);
        const double clock = 1.0 + eps * tau * tau * xi_x;
        d[0] = clock;
        d[1] = mu * clock;
        d[2] = eps * ((delta / Om) * std::sin(Om * t) + mu * tau * xi);
        d[3] = delta * std::cos(Om * t) - eps * mu * tau * u * xi_x;
        d[4] = mu * (xi - eps * tau * w * xi_x);
        d[5] = delta * Om * std::sin(Om * t) - 3.0 * mu * eps * tau * p * xi_x;
    };
    FlowTrajectory out;
    out.start_ = start;
    out.kind_ = FlowKind::Full;
    out.a_end_ = a_end;
    out.traj_ = math::integrate_ode(rhs, {start.t, start.tau, start.x, start.u, start.w, start.p},
                                    0.0, a_end, to_ode(opt));
    return out;
}

FlowTrajectory integrate_fast(const FieldFunctions& fields, const PhasePoint& start,
                              double a_end, FastCoefficientMode mode, const FlowOptions& opt) {
    fields.params.validate();
    const double eps = fields.params.eps;
    const double delta0 = fields.delta(start.x);
    const double Om0 = fields.Omega0(start.x);
    const bool frozen = mode == FastCoefficientMode::FrozenAtStart;
    auto rhs = [fields, eps, delta0, Om0, frozen](double, const std::vector<double>& y,
                                                  std::vector<double>& d) {
        const double t = y[0], x = y[1];
        const double delta = frozen ? delta0 : fields.delta(x);
        const double Om = frozen ? Om0 : fields.Omega0(x);
        d[0] = 1.0;
        d[1] = eps * (delta / Om) * std::sin(Om * t);
        d[2] = delta * std::cos(Om * t);
        d[3] = delta * Om * std::sin(Om * t);
    };
    FlowTrajectory out;
    out.start_ = start;
    out.kind_ = FlowKind::Fast;
    out.a_end_ = a_end;
    out.traj_ = math::integrate_ode(rhs, {start.t, start.x, start.u, start.p}, 0.0, a_end,
                                    to_ode(opt));
    return out;
}

FlowTrajectory integrate_slow(const FieldFunctions& fields, const PhasePoint& start,
                              double a_end, const FlowOptions& opt) {
    fields.params.validate();
    const double eps = fields.params.eps;
    auto rhs = [fields, eps](double, const std::vector<double>& y, std::vector<double>& d) {
        const double tau = y[0], x = y[1], u = y[2], w = y[3], p = y[4];
        const double xi = fields.xi(x);
        const double xi_x = fields.dxi(x);
        d[0] = 1.0 + eps * tau * tau * xi_x;
        d[1] = eps * tau * xi;
        d[2] = -eps * tau * u * xi_x;
        d[3] = xi - eps * tau * w * xi_x;
        d[4] = -3.0 * eps * tau * p * xi_x;
    };
    FlowTrajectory out;
    out.start_ = start;
    out.kind_ = FlowKind::Slow;
    out.a_end_ = a_end;
    out.traj_ = math::integrate_ode(rhs, {start.tau, start.x, start.u, start.w, start.p}, 0.0,
                                    a_end, to_ode(opt));
    return out;
}

InvariantSet fast_invariants(const PhasePoint& pt, const FieldFunctions& fields,
                             std::optional<double> x_freeze) {
    const double xf = x_freeze.value_or(pt.x);
    const double delta = fields.delta(xf);
    const double Om = fields.Omega0(xf);
    if (!(Om > 0.0)) throw std::invalid_argument("fast_invariants: Omega must be positive");
    const double eps = fields.params.eps;
    const double c = std::cos(Om * pt.t);
    const double s = std::sin(Om * pt.t);
    InvariantSet inv;
    inv.kind = FlowKind::Fast;
    inv.x_ref = xf;
    inv.values = {pt.p + delta * c, pt.x + eps * delta / (Om * Om) * c, pt.u - (delta / Om) * s,
                  pt.g};
    return inv;
}

InvariantSet slow_invariants(const PhasePoint& pt, const FieldFunctions& fields, double x_ref,
                             const math::QuadOptions& quad) {
    const double eps = fields.params.eps;
    const double x = pt.x;
    if (x * x_ref < 0.0)
        throw SingularQuadratureError("slow_invariants: x and x_ref straddle the origin");
    // xi must keep one sign along the quadrature path.
    const double lo = std::min(x, x_ref), hi = std::max(x, x_ref);
    const double sign0 = fields.xi(hi) > 0.0 ? 1.0 : -1.0;
    for (int i = 0; i <= 8; ++i) {
        const double z = lo + (hi - lo) * i / 8.0;
        const double v = fields.xi(z);
        if (v * sign0 <= 0.0 && z != 0.0)
            throw SingularQuadratureError("slow_invariants: xi changes sign on the path");
    }

    const double xi = fields.xi(x);
    auto inv_xi3 = [&fields](double z) {
        const double v = fields.xi(z);
        return 1.0 / (v * v * v);
    };
    const double G = math::integrate(inv_xi3, x_ref, x, quad).value;

    double I6 = std::numeric_limits<double>::quiet_NaN();
    if (x >= x_ref) {
        // Substitute y = x_ref + s^2: the inverse square root of the inner
        // integral is then regular at the anchor.
        auto h_int = [&](double s) {
            const double y = x_ref + s * s;
            const double g = math::integrate(inv_xi3, x_ref, y, quad).value;
            if (!(g > 0.0))
                throw SingularQuadratureError("slow_invariants: inner integral nonpositive");
            return 2.0 * s / std::sqrt(g);
        };
        const double smax = std::sqrt(x - x_ref);
        const double H = smax > 0.0 ? math::integrate(h_int, 0.0, smax, quad).value : 0.0;
        I6 = xi * pt.w - H / std::sqrt(2.0 * eps);
    }

    InvariantSet inv;
    inv.kind = FlowKind::Slow;
    inv.x_ref = x_ref;
    inv.values = {pt.f,
                  pt.g,
                  pt.p * xi * xi * xi,
                  eps * pt.tau * pt.tau / (2.0 * xi * xi) - G,
                  xi * pt.u,
                  I6};
    return inv;
}

} // namespace plexp
