#include "plexp/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include "plexp/errors.hpp"
#include "plexp/math/quad.hpp"
#include "plexp/math/special.hpp"

namespace plexp {

namespace {
constexpr double kInvSqrtPi = 0.5641895835477562869; // 1/sqrt(pi)
constexpr double kInvPi = 0.3183098861837906715;
constexpr double kGaussCap = 26.0;  // exp(-x^2) underflows just past here
constexpr double kLorentzCap = 1e8; // practical cap for the algebraic family
} // namespace

DensityProfile DensityProfile::gaussian(double b) {
    if (!(b > 0.0)) throw std::invalid_argument("DensityProfile: b must be positive");
    DensityProfile p;
    p.kind_ = ProfileKind::Gaussian;
    p.b_ = b;
    p.cap_ = kGaussCap / std::max(1.0, b);
    return p;
}

DensityProfile DensityProfile::lorentz(double b) {
    if (!(b > 0.0)) throw std::invalid_argument("DensityProfile: b must be positive");
    DensityProfile p;
    p.kind_ = ProfileKind::Lorentz;
    p.b_ = b;
    p.cap_ = kLorentzCap / std::max(1.0, b);
    return p;
}

DensityProfile DensityProfile::tabulated(std::vector<double> x, std::vector<double> n, double b) {
    if (!(b > 0.0)) throw std::invalid_argument("DensityProfile: b must be positive");
    if (x.size() < 4) throw std::invalid_argument("DensityProfile: table needs >= 4 samples");
    if (x.front() != 0.0)
        throw std::invalid_argument("DensityProfile: table must start at x = 0");
    for (double v : n)
        if (!(v > 0.0)) throw std::invalid_argument("DensityProfile: table densities must be positive");
    DensityProfile p;
    p.kind_ = ProfileKind::Tabulated;
    p.b_ = b;
    p.cap_ = x.back() / std::max(1.0, b);
    p.table_ = std::make_shared<math::MonotoneCubic>(std::move(x), std::move(n));
    return p;
}

void DensityProfile::check_domain(double x) const {
    if (std::abs(x) > cap_)
        throw DomainExitError("DensityProfile: |x| beyond evaluation cap", x);
}

double DensityProfile::ne0(double x) const {
    check_domain(x);
    switch (kind_) {
    case ProfileKind::Gaussian: return kInvSqrtPi * std::exp(-x * x);
    case ProfileKind::Lorentz: return kInvPi / (1.0 + x * x);
    case ProfileKind::Tabulated: return (*table_)(std::abs(x));
    }
    return 0.0;
}

double DensityProfile::ni0(double x) const {
    check_domain(x);
    const double y = b_ * x;
    switch (kind_) {
    case ProfileKind::Gaussian: return b_ * kInvSqrtPi * std::exp(-y * y);
    case ProfileKind::Lorentz: return b_ * kInvPi / (1.0 + y * y);
    case ProfileKind::Tabulated: return b_ * (*table_)(std::abs(y));
    }
    return 0.0;
}

double DensityProfile::dlog_ne0(double x) const {
    check_domain(x);
    switch (kind_) {
    case ProfileKind::Gaussian: return -2.0 * x;
    case ProfileKind::Lorentz: return -2.0 * x / (1.0 + x * x);
    case ProfileKind::Tabulated: {
        const double ax = std::abs(x);
        const double sign = x < 0.0 ? -1.0 : 1.0;
        return sign * table_->derivative(ax) / (*table_)(ax);
    }
    }
    return 0.0;
}

double DensityProfile::dlog_ni0(double x) const {
    check_domain(x);
    const double y = b_ * x;
    switch (kind_) {
    case ProfileKind::Gaussian: return -2.0 * b_ * y;
    case ProfileKind::Lorentz: return -2.0 * b_ * y / (1.0 + y * y);
    case ProfileKind::Tabulated: {
        const double ay = std::abs(y);
        const double sign = y < 0.0 ? -1.0 : 1.0;
        return sign * b_ * table_->derivative(ay) / (*table_)(ay);
    }
    }
    return 0.0;
}

double DensityProfile::charge_moment(double x) const {
    check_domain(x);
    switch (kind_) {
    case ProfileKind::Gaussian:
        return 0.5 * (math::erf(b_ * x) - math::erf(x));
    case ProfileKind::Lorentz:
        return kInvPi * (std::atan(b_ * x) - std::atan(x));
    case ProfileKind::Tabulated: {
        // Odd in x; integrate the even integrand on [0, |x|].
        const double ax = std::abs(x);
        auto f = [this](double z) { return ni0(z) - ne0(z); };
        const double v = math::integrate(f, 0.0, ax).value;
        return x < 0.0 ? -v : v;
    }
    }
    return 0.0;
}

double FieldFunctions::Omega0(double x) const { return std::sqrt(ni0(x)); }

FieldFunctions make_fields(const DensityProfile& profile, const PlasmaParams& params) {
    params.validate();
    FieldFunctions f;
    f.params = params;
    f.kind = profile.kind();
    f.x_cap = profile.x_cap();
    const double eps = params.eps;
    const double g2 = params.gamma * params.gamma;
    const double b = profile.b();

    f.ne0 = [profile](double x) { return profile.ne0(x); };
    f.ni0 = [profile](double x) { return profile.ni0(x); };
    f.dlog_ne0 = [profile](double x) { return profile.dlog_ne0(x); };
    f.dlog_ni0 = [profile](double x) { return profile.dlog_ni0(x); };
    f.p0 = [profile, eps](double x) { return profile.charge_moment(x) / eps; };
    f.xi = [profile, eps, g2](double x) {
        return -eps * (profile.dlog_ne0(x) + g2 * profile.dlog_ni0(x));
    };
    f.delta = [profile, eps](double x) {
        return -profile.charge_moment(x) / eps - eps * profile.dlog_ne0(x);
    };

    switch (profile.kind()) {
    case ProfileKind::Gaussian:
        // xi = 2 eps x (1 + b^2 gamma^2) exactly; slope is constant.
        f.dxi = [eps, g2, b](double) { return 2.0 * eps * (1.0 + b * b * g2); };
        f.xi_slope0 = 2.0 * eps * (1.0 + b * b * g2);
        break;
    case ProfileKind::Lorentz:
        f.dxi = [profile, eps, g2, b](double x) {
            const double u = 1.0 + x * x;
            const double v = 1.0 + b * b * x * x;
            (void)profile;
            return 2.0 * eps * ((1.0 - x * x) / (u * u) + g2 * b * b * (1.0 - b * b * x * x) / (v * v));
        };
        f.xi_slope0 = 2.0 * eps * (1.0 + b * b * g2);
        break;
    case ProfileKind::Tabulated: {
        auto xi_fn = f.xi;
        const double cap = profile.x_cap();
        f.dxi = [xi_fn, cap](double x) {
            // Central difference, shrinking near the cap edges.
            double h = 1e-5 * std::max(1.0, std::abs(x));
            h = std::min(h, 0.5 * std::max(1e-12, cap - std::abs(x)) + 1e-12);
            return (xi_fn(x + h) - xi_fn(x - h)) / (2.0 * h);
        };
        f.xi_slope0 = f.dxi(0.0);
        break;
    }
    }
    return f;
}

InitialDistributions make_initial(const FieldFunctions& fields) {
    InitialDistributions init;
    auto ne0 = fields.ne0;
    auto ni0 = fields.ni0;
    const double gamma = fields.params.gamma;
    init.g0 = [ne0](double x, double u) { return ne0(x) * std::exp(-0.5 * u * u); };
    init.f0 = [ni0, gamma](double x, double w) {
        if (gamma == 0.0)
            throw ColdIonLimit("f0: gamma = 0 collapses the ion Maxwellian to a sheet");
        return ni0(x) * std::exp(-0.5 * w * w / (gamma * gamma));
    };
    return init;
}

} // namespace plexp
