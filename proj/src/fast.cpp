#include "plexp/fast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "plexp/errors.hpp"
#include "plexp/math/interp.hpp"
#include "plexp/math/quad.hpp"
#include "plexp/math/roots.hpp"
#include "plexp/slow.hpp"

namespace plexp {

namespace {

double cube(double v) { return v * v * v; }

void check_options(const FastOptions& opt) {
    if (opt.points_per_period < 4)
        throw std::invalid_argument("fast reconstruction: points_per_period below 4 aliases");
    if (opt.table_per_period < 4)
        throw std::invalid_argument("fast reconstruction: table_per_period below 4 aliases");
    if (opt.max_table_nodes < 64)
        throw std::invalid_argument("fast reconstruction: max_table_nodes too small");
}

// Tabulated path quantities in the regularizing variable s, x'' = x' + s^2.
// Amplitude tables carry the 2s jacobian, so path integrals are plain
// integrals ds of amp * sin/cos(phase).
struct PathTables {
    double x_prime = 0.0;
    double x_bar = 0.0;
    double s_max = 0.0;
    double xi_p = 0.0;
    double xi_b = 0.0;
    double tau_end = 0.0;
    double phase_span = 0.0; // total variation of the phase along the path
    math::MonotoneCubic phase;
    math::MonotoneCubic amp_p; // drive of the field integral
    math::MonotoneCubic amp_u; // drive of the velocity integral
};

// One table-building pass with n segments; returns the phase variation so
// the caller can re-run at matched resolution.
PathTables build_pass(const FieldFunctions& fields, double x_prime, double x_bar,
                      const FastOptions& opt, int n) {
    const double eps = fields.params.eps;
    const double mu = fields.params.mu;
    if (mu <= 0.0)
        throw std::invalid_argument("fast reconstruction: needs mu > 0 (finite mass ratio)");

    PathTables tb;
    tb.x_prime = x_prime;
    tb.x_bar = x_bar;
    tb.s_max = std::sqrt(x_bar - x_prime);
    tb.xi_p = fields.xi(x_prime);
    tb.xi_b = fields.xi(x_bar);

    auto inv_xi3 = [&fields](double z) { return 1.0 / cube(fields.xi(z)); };
    const double delta_p = fields.delta(x_prime);
    const double omega_p2 = fields.ni0(x_prime); // frequency^2 at the label
    const double nu_clock = std::sqrt(2.0 / (eps * tb.xi_p)); // tau ~ nu_clock * s

    std::vector<double> s(n + 1), phi(n + 1), ap(n + 1), au(n + 1);
    double g_cum = 0.0;
    double y_prev = x_prime;
    for (int k = 0; k <= n; ++k) {
        s[k] = tb.s_max * k / n;
        const double y = x_prime + s[k] * s[k];
        if (k > 0) {
            g_cum += math::kronrod_panel(inv_xi3, y_prev, y).value;
            y_prev = y;
        }
        const double xi_y = fields.xi(y);
        const double omega = std::sqrt(omega_p2 * tb.xi_p / xi_y);
        const double dbar = (opt.transport == DeltaTransport::LabelFrozen)
                                ? delta_p
                                : delta_p * cube(tb.xi_p / xi_y);
        double tau, two_s_over_tau;
        if (k == 0) {
            tau = 0.0;
            two_s_over_tau = 2.0 / nu_clock;
        } else {
            tau = xi_y * std::sqrt(2.0 * g_cum / eps);
            two_s_over_tau = 2.0 * s[k] / tau;
        }
        phi[k] = omega * tau / mu;
        ap[k] = dbar * omega * xi_y * xi_y * two_s_over_tau / (eps * mu);
        au[k] = dbar * two_s_over_tau / (eps * mu);
    }
    tb.tau_end = (n > 0) ? fields.xi(x_bar) * std::sqrt(2.0 * g_cum / eps) : 0.0;
    for (int k = 1; k <= n; ++k) tb.phase_span += std::abs(phi[k] - phi[k - 1]);
    tb.phase = math::MonotoneCubic(s, phi);
    tb.amp_p = math::MonotoneCubic(s, std::move(ap));
    tb.amp_u = math::MonotoneCubic(s, std::move(au));
    return tb;
}

PathTables build_tables(const FieldFunctions& fields, double x_prime, double x_bar,
                        const FastOptions& opt) {
    const int n0 = 384;
    PathTables tb = build_pass(fields, x_prime, x_bar, opt, n0);
    const double periods = tb.phase_span / (2.0 * M_PI);
    const int needed = std::max(768, static_cast<int>(std::ceil(opt.table_per_period * periods)));
    if (needed > opt.max_table_nodes)
        throw SingularQuadratureError(
            "fast reconstruction: oscillation unresolvable within the table budget");
    if (needed > n0) tb = build_pass(fields, x_prime, x_bar, opt, needed);
    return tb;
}

// Panel boundaries in s at every crossing of an integer multiple of 2 pi.
// Table segments each span a small fraction of a period, so a segment
// carries at most one crossing of a given multiple.
std::vector<double> phase_panels(const PathTables& tb) {
    std::vector<double> bounds;
    bounds.push_back(0.0);
    const auto& s = tb.phase.knots();
    const auto& phi = tb.phase.values();
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        const double lo = std::min(phi[k], phi[k + 1]);
        const double hi = std::max(phi[k], phi[k + 1]);
        for (long m = static_cast<long>(std::floor(lo / (2.0 * M_PI))) + 1;
             2.0 * M_PI * m <= hi; ++m) {
            const double target = 2.0 * M_PI * m;
            if (target <= lo) continue;
            const double root = math::brent(
                [&](double x) { return tb.phase(x) - target; }, s[k], s[k + 1], 1e-14);
            bounds.push_back(root);
        }
    }
    bounds.push_back(tb.s_max);
    std::sort(bounds.begin(), bounds.end());
    return bounds;
}

struct OscIntegrals {
    double p = 0.0; // int amp_p sin(phase) ds
    double u = 0.0; // int amp_u cos(phase) ds
};

OscIntegrals integrate_path(const PathTables& tb, const FastOptions& opt) {
    OscIntegrals out;
    if (tb.s_max == 0.0) return out;
    const auto bounds = phase_panels(tb);
    const auto& rule = math::gauss_legendre(opt.points_per_period);
    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
        const double a = bounds[j], b = bounds[j + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        if (h <= 0.0) continue;
        double acc_p = 0.0, acc_u = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double si = c + h * rule.nodes[i];
            const double ph = tb.phase(si);
            acc_p += rule.weights[i] * tb.amp_p(si) * std::sin(ph);
            acc_u += rule.weights[i] * tb.amp_u(si) * std::cos(ph);
        }
        out.p += h * acc_p;
        out.u += h * acc_u;
    }
    return out;
}

FastPoint evaluate_point(const FieldFunctions& fields, const PrimedState* primed,
                         double x_prime, double x_bar, double u_prime,
                         const FastOptions& opt) {
    fields.params.validate();
    check_options(opt);
    if (!(x_prime > 0.0))
        throw std::invalid_argument("fast reconstruction: label x' must be positive");
    if (!(x_bar >= x_prime))
        throw std::invalid_argument("fast reconstruction: needs x_bar >= x' on the half-line");

    FastPoint pt;
    pt.x_prime = x_prime;
    pt.x_bar = x_bar;
    pt.regime_warning =
        std::abs(fields.delta(x_prime) * fields.params.eps) > opt.regime_threshold;

    if (x_bar == x_prime) {
        if (primed != nullptr) {
            pt.p_slow = primed->p_prime(x_prime);
            pt.p_full = pt.p_slow;
        }
        pt.u = u_prime;
        pt.n_e_av = fields.ne0(x_prime);
        return pt;
    }

    const PathTables tb = build_tables(fields, x_prime, x_bar, opt);
    const OscIntegrals osc = integrate_path(tb, opt);
    pt.tau = tb.tau_end;
    pt.periods = static_cast<int>(std::floor(tb.phase_span / (2.0 * M_PI)));

    const double r = tb.xi_p / tb.xi_b;
    if (primed != nullptr) {
        pt.p_slow = cube(r) * primed->p_prime(x_prime);
        pt.p_full = pt.p_slow + osc.p / cube(tb.xi_b);
    }
    pt.u = r * u_prime + osc.u / tb.xi_b;
    pt.n_e_av = fields.ne0(x_prime) * r;
    pt.u_e_av = osc.u / tb.xi_p;
    return pt;
}

} // namespace

ClockSample clock_along_slow(double x_prime, double x_dprime, const FieldFunctions& fields) {
    fields.params.validate();
    if (!(x_prime > 0.0))
        throw std::invalid_argument("clock_along_slow: label x' must be positive");
    if (!(x_dprime >= x_prime))
        throw std::invalid_argument("clock_along_slow: needs x'' >= x' on the half-line");
    if (fields.params.mu <= 0.0)
        throw std::invalid_argument("clock_along_slow: needs mu > 0");
    ClockSample c;
    if (x_dprime == x_prime) return c;
    math::QuadOptions q;
    q.rel_tol = 1e-12;
    q.abs_tol = 1e-15;
    const double g =
        math::integrate([&fields](double z) { return 1.0 / cube(fields.xi(z)); }, x_prime,
                        x_dprime, q)
            .value;
    c.tau = fields.xi(x_dprime) * std::sqrt(2.0 * g / fields.params.eps);
    c.t = c.tau / fields.params.mu;
    return c;
}

double fast_field(double x_prime, double x_bar, const FieldFunctions& fields,
                  const PrimedState& primed, const FastOptions& options) {
    return evaluate_point(fields, &primed, x_prime, x_bar, 0.0, options).p_full;
}

double fast_velocity(double x_prime, double x_bar, const FieldFunctions& fields,
                     double u_prime, const FastOptions& options) {
    return evaluate_point(fields, nullptr, x_prime, x_bar, u_prime, options).u;
}

ElectronAverages electron_diagnostics(double x_prime, double x_bar,
                                      const FieldFunctions& fields,
                                      const FastOptions& options) {
    const FastPoint pt = evaluate_point(fields, nullptr, x_prime, x_bar, 0.0, options);
    return {pt.n_e_av, pt.u_e_av};
}

FastReconstruction reconstruct_fast(const FieldFunctions& fields, const PrimedState& primed,
                                    double tau, const std::vector<double>& labels,
                                    const FastOptions& options) {
    check_options(options);
    FastReconstruction rec;
    rec.tau = tau;
    rec.points_per_period = options.points_per_period;
    rec.points.reserve(labels.size());
    for (double xp : labels) {
        const double xb = slow_map_forward(xp, tau, fields, options.map_tol);
        FastPoint pt = evaluate_point(fields, &primed, xp, xb, 0.0, options);
        pt.tau = tau;
        rec.points.push_back(pt);
    }
    return rec;
}

} // namespace plexp
