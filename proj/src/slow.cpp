#include "plexp/slow.hpp"

#include <cmath>
#include <stdexcept>

#include "plexp/errors.hpp"
#include "plexp/math/quad.hpp"
#include "plexp/math/roots.hpp"

namespace plexp {

namespace {

constexpr double kLabelMin = 1e-3; // below this the local-linear closed form serves

double cube(double v) { return v * v * v; }

math::QuadOptions tight_quad() {
    math::QuadOptions q;
    q.rel_tol = 1e-12;
    q.abs_tol = 1e-15;
    return q;
}

// int_{lo}^{hi} dz / xi^3, adaptive.
double g_integral(const FieldFunctions& fields, double lo, double hi) {
    if (hi == lo) return 0.0;
    return math::integrate([&fields](double z) { return 1.0 / cube(fields.xi(z)); }, lo, hi,
                           tight_quad())
        .value;
}

// int_{x'}^{x_bar} dy [G(y)]^{-1/2} via y = x' + s^2. Composite Kronrod
// panels in s; within a panel G is the cumulative prefix plus one exact
// panel from the previous node, so no interpolation error enters the
// inverse square root.
double v_integral(const FieldFunctions& fields, double xp, double xb) {
    if (xb <= xp) return 0.0;
    auto inv_xi3 = [&fields](double z) { return 1.0 / cube(fields.xi(z)); };
    const double s_max = std::sqrt(xb - xp);
    const int panels = 64;
    const double hs = s_max / panels;
    double total = 0.0;
    double g_prefix = 0.0;
    double y_prev = xp;
    for (int k = 0; k < panels; ++k) {
        const double s_hi = (k == panels - 1) ? s_max : hs * (k + 1);
        const double y_hi = xp + s_hi * s_hi;
        auto f = [&](double s) {
            const double y = xp + s * s;
            const double g = g_prefix + math::kronrod_panel(inv_xi3, y_prev, y).value;
            return 2.0 * s / std::sqrt(g);
        };
        total += math::kronrod_panel(f, hs * k, s_hi).value;
        g_prefix += math::kronrod_panel(inv_xi3, y_prev, y_hi).value;
        y_prev = y_hi;
    }
    return total;
}

void check_label(double xp) {
    if (!(xp > 0.0)) throw std::invalid_argument("slow solution: label x' must be positive");
}

} // namespace

double slow_map_forward(double x_prime, double tau, const FieldFunctions& fields, double tol) {
    fields.params.validate();
    check_label(x_prime);
    if (!(tol > 0.0)) throw std::invalid_argument("slow_map_forward: bad tolerance");
    const double eps = fields.params.eps;
    const double t2 = tau * tau;
    if (t2 == 0.0) return x_prime;
    if (x_prime < kLabelMin) {
        const double nu02 = eps * fields.xi_slope0;
        return x_prime * std::sqrt(1.0 + nu02 * t2);
    }
    auto F = [&](double xb) {
        const double xi_b = fields.xi(xb);
        return 2.0 * xi_b * xi_b * g_integral(fields, x_prime, xb) - eps * t2;
    };
    const double cap = 0.999 * fields.x_cap;
    double a = x_prime;
    double b = std::min(cap, x_prime * 1.3 + 0.1);
    double fa = -eps * t2, fb = 0.0;
    try {
        math::expand_bracket(F, a, b, cap, fa, fb);
    } catch (const ConvergenceError&) {
        throw DomainExitError("slow_map_forward: image beyond the profile evaluation cap",
                              x_prime);
    }
    return math::brent(F, a, b, tol * std::max(1.0, b));
}

IonDiagnostics ion_diagnostics(double x_prime, double tau, const FieldFunctions& fields,
                               double tol) {
    fields.params.validate();
    check_label(x_prime);
    const double eps = fields.params.eps;
    IonDiagnostics d;
    if (x_prime < kLabelMin) {
        const double nu02 = eps * fields.xi_slope0;
        const double S2 = 1.0 + nu02 * tau * tau;
        const double S = std::sqrt(S2);
        d.x_bar = x_prime * S;
        d.n_av = fields.ni0(x_prime) / S;
        d.T = fields.params.Ti0 / S2;
        d.v_av = d.x_bar * nu02 * tau / (eps * S2);
        return d;
    }
    d.x_bar = slow_map_forward(x_prime, tau, fields, tol);
    const double r = fields.xi(x_prime) / fields.xi(d.x_bar);
    d.n_av = fields.ni0(x_prime) * r;
    d.T = fields.params.Ti0 * r * r;
    d.v_av = v_integral(fields, x_prime, d.x_bar) /
             (fields.xi(d.x_bar) * std::sqrt(2.0 * eps));
    return d;
}

SlowState slow_transform(double x_prime, double w_prime, double u_prime, double tau,
                         const FieldFunctions& fields, const PrimedState& primed, double tol) {
    const IonDiagnostics d = ion_diagnostics(x_prime, tau, fields, tol);
    SlowState s;
    s.x_prime = x_prime;
    s.x_bar = d.x_bar;
    s.tau = tau;
    s.n_av = d.n_av;
    s.v_av = d.v_av;
    s.T = d.T;
    const double r = (x_prime < kLabelMin)
                         ? x_prime / d.x_bar
                         : fields.xi(x_prime) / fields.xi(d.x_bar);
    s.p_bar = r * r * r * primed.p_prime(x_prime);
    s.u_bar = r * u_prime;
    s.w_bar = r * w_prime + d.v_av;
    return s;
}

IonDiagnostics lorentz_diagnostics(double x_prime, double tau, const FieldFunctions& fields,
                                   double tol) {
    if (fields.kind != ProfileKind::Lorentz)
        throw std::invalid_argument("lorentz_diagnostics: Lorentz profile required");
    return ion_diagnostics(x_prime, tau, fields, tol);
}

SlowState gaussian_closed_form(double x_input, double tau, const PlasmaParams& params,
                               MapDirection dir, double u_prime, double w_prime,
                               double p_prime) {
    params.validate();
    const double nu2 = params.nu2();
    const double S2 = 1.0 + nu2 * tau * tau;
    const double S = std::sqrt(S2);
    SlowState s;
    s.tau = tau;
    s.x_prime = (dir == MapDirection::LabelToLab) ? x_input : x_input / S;
    s.x_bar = s.x_prime * S;
    const double b = params.b;
    const double ni0 = b * std::exp(-b * b * s.x_prime * s.x_prime) / std::sqrt(M_PI);
    s.n_av = ni0 / S;
    s.T = params.Ti0 / S2;
    s.v_av = s.x_bar * nu2 * tau / (params.eps * S2);
    s.p_bar = p_prime / (S2 * S);
    s.u_bar = u_prime / S;
    s.w_bar = (w_prime + (nu2 / params.eps) * s.x_prime * tau) / S;
    return s;
}

double transport_defect(double x_prime, double tau, const FieldFunctions& fields) {
    fields.params.validate();
    check_label(x_prime);
    const double h = std::min(1e-5 * std::max(x_prime, 0.1), 0.4 * x_prime);
    const double xb_plus = slow_map_forward(x_prime + h, tau, fields);
    const double xb_minus = slow_map_forward(x_prime - h, tau, fields);
    const double jac = (xb_plus - xb_minus) / (2.0 * h);
    const double n_av = ion_diagnostics(x_prime, tau, fields).n_av;
    const double ni = fields.ni0(x_prime);
    return std::abs(n_av * jac - ni) / ni;
}

} // namespace plexp
