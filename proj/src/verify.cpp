#include "plexp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"

#include "plexp/bvp.hpp"
#include "plexp/lie_flow.hpp"
#include "plexp/profiles.hpp"
#include "plexp/slow.hpp"
#include "plexp/symmetry.hpp"
#include "plexp/version.hpp"

namespace plexp {

namespace {

PlasmaParams std_params() {
    PlasmaParams p;
    p.eps = 0.1;
    p.mu = std::sqrt(1.0 / 2000.0);
    p.gamma = 0.1;
    p.b = 1.0;
    return p;
}

PhasePoint sample_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    PhasePoint pt;
    pt.t = 0.5 + 5.0 * U(rng);
    pt.tau = 0.2 + 1.3 * U(rng);
    pt.x = 0.3 + 1.5 * U(rng);
    pt.u = -0.6 + 1.2 * U(rng);
    pt.w = -0.6 + 1.2 * U(rng);
    pt.p = -0.4 + 0.8 * U(rng);
    if (std::abs(pt.u) < 0.05) pt.u = 0.3;
    return pt;
}

// The Gaussian family has xi proportional to x, so the slow map and the
// averaged diagnostics are available in closed form; the quadrature path
// must reproduce them.
CheckResult check_slow_map(std::mt19937& rng) {
    const auto params = std_params();
    const auto fields = make_fields(DensityProfile::gaussian(params.b), params);
    std::uniform_real_distribution<double> Ux(0.1, 3.0), Ut(0.0, 18.0);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        const double xp = Ux(rng), tau = Ut(rng);
        const double got = slow_map_forward(xp, tau, fields);
        const double want = gaussian_closed_form(xp, tau, params).x_bar;
        worst = std::max(worst, std::abs(got - want) / want);
    }
    return {"slow_map_closed_form", 1e-6, worst, worst < 1e-6};
}

CheckResult check_diagnostics(std::mt19937& rng) {
    const auto params = std_params();
    const auto fields = make_fields(DensityProfile::gaussian(params.b), params);
    std::uniform_real_distribution<double> Ux(0.1, 3.0), Ut(0.5, 18.0);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double xp = Ux(rng), tau = Ut(rng);
        const auto got = ion_diagnostics(xp, tau, fields);
        const auto want = gaussian_closed_form(xp, tau, params);
        worst = std::max(worst, std::abs(got.n_av - want.n_av) / want.n_av);
        worst = std::max(worst, std::abs(got.v_av - want.v_av) / std::abs(want.v_av));
        worst = std::max(worst, std::abs(got.T - want.T) / want.T);
    }
    return {"diagnostics_closed_form", 1e-5, worst, worst < 1e-5};
}

CheckResult check_fast_drift() {
    const auto fields = make_fields(DensityProfile::gaussian(1.0), std_params());
    PhasePoint s;
    s.t = 1.0;
    s.tau = 0.3;
    s.x = 1.3;
    s.u = -0.4;
    s.w = 0.1;
    s.p = 0.25;
    s.g = 0.77;
    s.f = 0.5;
    FlowOptions fo;
    fo.rel_tol = fo.abs_tol = 1e-12;
    const auto orbit = integrate_fast(fields, s, 10.0, FastCoefficientMode::FrozenAtStart, fo);
    const auto ref = fast_invariants(s, fields, s.x);
    double drift = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const auto inv = fast_invariants(orbit.at(10.0 * i / 200.0), fields, s.x);
        for (std::size_t k = 0; k < ref.values.size(); ++k) {
            const double scale = std::max(std::abs(ref.values[k]), 0.3);
            drift = std::max(drift, std::abs(inv.values[k] - ref.values[k]) / scale);
        }
    }
    return {"fast_invariant_drift", 1e-8, drift, drift < 1e-8};
}

CheckResult check_slow_drift() {
    const auto fields = make_fields(DensityProfile::gaussian(1.0), std_params());
    const double eps = fields.params.eps;
    PhasePoint s;
    s.tau = 0.0;
    s.x = 0.8;
    s.u = 0.3;
    s.w = -0.2;
    s.p = 0.16;
    s.g = 1.4;
    s.f = 0.6;
    const auto orbit = integrate_slow(fields, s, 10.0);
    const auto ref = slow_invariants(s, fields, s.x);
    double drift = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const auto pt = orbit.at(10.0 * i / 40.0);
        const auto inv = slow_invariants(pt, fields, s.x);
        const double xi_far = fields.xi(pt.x);
        // Two invariants start near zero while their constituent terms
        // grow; drift is measured against the grown scale.
        const std::vector<double> scales = {
            std::abs(ref.values[0]),
            std::abs(ref.values[1]),
            std::abs(ref.values[2]),
            eps * pt.tau * pt.tau / (2.0 * xi_far * xi_far),
            std::abs(ref.values[4]),
            std::abs(xi_far * pt.w) + std::abs(ref.values[5]) + 1.0};
        for (std::size_t k = 0; k < ref.values.size(); ++k)
            drift = std::max(drift,
                             std::abs(inv.values[k] - ref.values[k]) / std::max(scales[k], 1e-12));
    }
    return {"slow_invariant_drift", 1e-7, drift, drift < 1e-7};
}

CheckResult check_residual_halving(std::mt19937& rng) {
    auto p1 = std_params();
    auto p2 = p1;
    p2.eps *= 0.5;
    p2.mu *= 0.5;
    const auto f1 = make_fields(DensityProfile::gaussian(1.0), p1);
    const auto f2 = make_fields(DensityProfile::gaussian(1.0), p2);
    const auto g1 = approximate_generator(f1);
    const auto g2 = approximate_generator(f2);
    std::vector<double> fast_ratio, slow_ratio;
    for (int i = 0; i < 50; ++i) {
        const auto pt = sample_point(rng);
        fast_ratio.push_back(determining_residual_fast(g2, pt, p2).fast_max() /
                             determining_residual_fast(g1, pt, p1).fast_max());
        slow_ratio.push_back(determining_residual_slow(g2, pt, p2).slow_max() /
                             determining_residual_slow(g1, pt, p1).slow_max());
    }
    auto median = [](std::vector<double>& v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    };
    const double worst = std::max(median(fast_ratio), median(slow_ratio));
    return {"residual_halving", 0.35, worst, worst <= 0.35};
}

CheckResult check_bvp_uniform() {
    FieldFunctions f;
    f.params = std_params();
    f.ne0 = [](double) { return 1.0; };
    f.ni0 = [](double) { return 1.0; };
    f.dlog_ne0 = [](double) { return 0.0; };
    f.dlog_ni0 = [](double) { return 0.0; };
    f.p0 = [](double) { return 0.0; };
    f.xi = [](double) { return 0.0; };
    f.dxi = [](double) { return 0.0; };
    f.delta = [](double) { return 0.0; };
    f.xi_slope0 = 0.0;
    f.x_cap = 1e12;
    const auto sol = solve_quasineutral_potential(f);
    double worst = 0.0;
    for (double v : sol.phi) worst = std::max(worst, std::abs(v));
    return {"bvp_uniform_background", 1e-10, worst, worst < 1e-10};
}

} // namespace

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["seed"] = seed;
    j["pass"] = pass;
    auto arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back(nlohmann::json{{"name", c.name},
                                     {"tolerance", c.tolerance},
                                     {"measured", c.measured},
                                     {"pass", c.pass}});
    j["checks"] = arr;
    return j.dump(2) + "\n";
}

VerifyReport run_verify(std::uint64_t seed) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    VerifyReport rep;
    rep.version = kVersion;
    rep.seed = seed;
    rep.checks.push_back(check_slow_map(rng));
    rep.checks.push_back(check_diagnostics(rng));
    rep.checks.push_back(check_fast_drift());
    rep.checks.push_back(check_slow_drift());
    rep.checks.push_back(check_residual_halving(rng));
    rep.checks.push_back(check_bvp_uniform());
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    return rep;
}

} // namespace plexp
