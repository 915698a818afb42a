#include "plexp/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace plexp {

GeneratorCoordinates GeneratorSplit::total() const {
    GeneratorCoordinates t;
    t.xi1 = fast.xi1 + slow.xi1;
    t.xi2 = fast.xi2 + slow.xi2;
    t.xi3 = fast.xi3 + slow.xi3;
    t.xi4 = fast.xi4 + slow.xi4;
    t.xi5 = fast.xi5 + slow.xi5;
    t.eta_g = fast.eta_g + slow.eta_g;
    t.eta_p = fast.eta_p + slow.eta_p;
    t.eta_f = fast.eta_f + slow.eta_f;
    return t;
}

GeneratorFn approximate_generator(const FieldFunctions& fields, const OmegaBackground& omega_bg) {
    fields.params.validate();
    const double eps = fields.params.eps;
    const double mu = fields.params.mu;
    return [fields, eps, mu, omega_bg](const PhasePoint& pt) {
        const double xi = fields.xi(pt.x);
        const double xi_x = fields.dxi(pt.x);
        const double delta = fields.delta(pt.x);
        const double Om = omega_bg ? std::sqrt(omega_bg(pt.tau, pt.x)) : fields.Omega0(pt.x);
        GeneratorSplit g;
        g.slow.xi1 = 1.0 + eps * pt.tau * pt.tau * xi_x;
        g.slow.xi2 = eps * mu * pt.tau * xi;
        g.slow.xi3 = -eps * mu * pt.tau * pt.u * xi_x;
        g.slow.xi4 = mu * (xi - eps * pt.tau * pt.w * xi_x);
        g.slow.xi5 = mu * g.slow.xi1;
        g.slow.eta_p = -3.0 * mu * eps * pt.tau * pt.p * xi_x;
        g.fast.xi2 = eps * (delta / Om) * std::sin(Om * pt.t);
        g.fast.xi3 = delta * std::cos(Om * pt.t);
        g.fast.eta_p = delta * Om * std::sin(Om * pt.t);
        return g;
    };
}

GeneratorFn electron_plasma_generator(double delta, double Omega, double eps) {
    if (!(Omega > 0.0)) throw std::invalid_argument("electron_plasma_generator: Omega must be positive");
    return [delta, Omega, eps](const PhasePoint& pt) {
        GeneratorSplit g;
        g.slow.xi1 = 1.0;
        g.fast.xi2 = eps * (delta / Omega) * std::sin(Omega * pt.t);
        g.fast.xi3 = delta * std::cos(Omega * pt.t);
        g.fast.eta_p = delta * Omega * std::sin(Omega * pt.t);
        return g;
    };
}

GeneratorFn quasineutral_generator(double beta, const PlasmaParams& params) {
    params.validate();
    if (!(params.mu > 0.0))
        throw std::invalid_argument(
            "quasineutral_generator: xi5 = mu xi1 is singular at mu = 0");
    const double eps = params.eps;
    const double mu = params.mu;
    return [beta, eps, mu](const PhasePoint& pt) {
        GeneratorSplit g;
        g.slow.xi5 = 1.0 + beta * eps * pt.tau * pt.tau;
        g.slow.xi1 = g.slow.xi5 / mu;
        g.slow.xi2 = eps * beta * pt.tau * pt.x;
        g.slow.xi3 = beta * (mu * pt.x - eps * pt.tau * pt.u);
        g.slow.xi4 = beta * (pt.x - eps * pt.tau * pt.w);
        g.slow.eta_p = -3.0 * eps * beta * pt.tau * pt.p;
        return g;
    };
}

double ResidualReport::fast_max() const { return std::max(std::abs(fast[0]), std::abs(fast[1])); }

double ResidualReport::slow_max() const {
    double m = 0.0;
    for (double v : slow) m = std::max(m, std::abs(v));
    return m;
}

namespace {

enum Var { VarT = 0, VarTau, VarX, VarU, VarW };
enum Coord { CXi1 = 0, CXi2, CXi3, CXi4, CXi5 };

PhasePoint shifted(const PhasePoint& pt, Var v, double dh) {
    PhasePoint q = pt;
    switch (v) {
    case VarT: q.t += dh; break;
    case VarTau: q.tau += dh; break;
    case VarX: q.x += dh; break;
    case VarU: q.u += dh; break;
    case VarW: q.w += dh; break;
    }
    return q;
}

double pick(const GeneratorCoordinates& c, Coord which) {
    switch (which) {
    case CXi1: return c.xi1;
    case CXi2: return c.xi2;
    case CXi3: return c.xi3;
    case CXi4: return c.xi4;
    case CXi5: return c.xi5;
    }
    return 0.0;
}

// Central difference with one Richardson level; flags the report when the
// two step levels disagree beyond what smooth truncation allows.
struct Differ {
    const GeneratorFn& gen;
    const PhasePoint& pt;
    double h_rel;
    bool fast_part;
    bool* warn;

    double operator()(Coord which, Var v) const {
        double base = 1.0;
        switch (v) {
        case VarT: base = std::max(1.0, std::abs(pt.t)); break;
        case VarTau: base = std::max(1.0, std::abs(pt.tau)); break;
        case VarX: base = std::max(1.0, std::abs(pt.x)); break;
        case VarU: base = std::max(1.0, std::abs(pt.u)); break;
        case VarW: base = std::max(1.0, std::abs(pt.w)); break;
        }
        const double h = h_rel * base;
        auto eval = [&](double dh) {
            const GeneratorSplit s = gen(shifted(pt, v, dh));
            return pick(fast_part ? s.fast : s.slow, which);
        };
        const double d_h = (eval(h) - eval(-h)) / (2.0 * h);
        const double d_h2 = (eval(0.5 * h) - eval(-0.5 * h)) / h;
        const double rich = (4.0 * d_h2 - d_h) / 3.0;
        // For a smooth coordinate the halved step shrinks the truncation
        // error 4x; a mismatched trend signals cancellation or a kink.
        const double scale = std::max({std::abs(rich), std::abs(d_h), 1e-8});
        if (std::abs(d_h2 - d_h) > 0.05 * scale && std::abs(rich - d_h2) > 0.01 * scale)
            *warn = true;
        return rich;
    }
};

} // namespace

ResidualReport determining_residual_fast(const GeneratorFn& gen, const PhasePoint& pt,
                                         const PlasmaParams& params, double h_rel) {
    params.validate();
    if (!(h_rel > 0.0 && h_rel < 1e-2))
        throw std::invalid_argument("determining_residual_fast: h_rel out of range");
    ResidualReport rep;
    rep.eps = params.eps;
    rep.mu = params.mu;
    rep.h = h_rel;
    const double eps = params.eps, mu = params.mu;
    Differ D{gen, pt, h_rel, true, &rep.richardson_warning};
    const GeneratorSplit g = gen(pt);

    const double dt_xi1 = D(CXi1, VarT), dtau_xi1 = D(CXi1, VarTau), dx_xi1 = D(CXi1, VarX);
    const double dt_xi3 = D(CXi3, VarT), dtau_xi3 = D(CXi3, VarTau), dx_xi3 = D(CXi3, VarX);
    const double du_xi3 = D(CXi3, VarU);
    const double dt_xi2 = D(CXi2, VarT), dtau_xi2 = D(CXi2, VarTau), dx_xi2 = D(CXi2, VarX);

    rep.fast[0] = g.fast.eta_p + pt.p * (dt_xi1 + mu * dtau_xi1 - du_xi3) + dt_xi3 +
                  mu * dtau_xi3 + eps * pt.u * pt.p * dx_xi1 + eps * pt.u * dx_xi3;
    rep.fast[1] = eps * g.fast.xi3 - dt_xi2 - mu * dtau_xi2 +
                  eps * pt.u * (dt_xi1 + mu * dtau_xi1 - dx_xi2) +
                  eps * eps * pt.u * pt.u * dx_xi1;
    return rep;
}

ResidualReport determining_residual_slow(const GeneratorFn& gen, const PhasePoint& pt,
                                         const PlasmaParams& params, double h_rel) {
    params.validate();
    if (!(h_rel > 0.0 && h_rel < 1e-2))
        throw std::invalid_argument("determining_residual_slow: h_rel out of range");
    ResidualReport rep;
    rep.eps = params.eps;
    rep.mu = params.mu;
    rep.h = h_rel;
    const double eps = params.eps, mu = params.mu;
    Differ D{gen, pt, h_rel, false, &rep.richardson_warning};
    const GeneratorSplit g = gen(pt);

    const double dtau_xi5 = D(CXi5, VarTau), dx_xi5 = D(CXi5, VarX);
    const double dtau_xi4 = D(CXi4, VarTau), dx_xi4 = D(CXi4, VarX), dw_xi4 = D(CXi4, VarW);
    const double dtau_xi1 = D(CXi1, VarTau), dx_xi1 = D(CXi1, VarX);
    const double dtau_xi3 = D(CXi3, VarTau), dx_xi3 = D(CXi3, VarX), du_xi3 = D(CXi3, VarU);
    const double dtau_xi2 = D(CXi2, VarTau), dx_xi2 = D(CXi2, VarX);

    // Ion kinetic invariance (field and transport conditions).
    rep.slow[0] = g.slow.eta_p + pt.p * (dtau_xi5 + eps * pt.w * dx_xi5 - dw_xi4) - dtau_xi4 -
                  eps * pt.w * dx_xi4;
    // Electron kinetic invariance on the slow scale.
    rep.slow[1] = g.slow.eta_p + pt.p * (mu * dtau_xi1 - du_xi3) + mu * dtau_xi3 +
                  eps * pt.u * pt.p * dx_xi1 + eps * pt.u * dx_xi3;
    rep.slow[2] = eps * g.slow.xi3 - mu * dtau_xi2 + eps * pt.u * (mu * dtau_xi1 - dx_xi2) +
                  eps * eps * pt.u * pt.u * dx_xi1;
    rep.slow[3] = eps * g.slow.xi4 - dtau_xi2 + eps * pt.w * (dtau_xi5 - dx_xi2) +
                  eps * eps * pt.w * pt.w * dx_xi5;
    return rep;
}

} // namespace plexp
