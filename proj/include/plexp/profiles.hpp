#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "plexp/math/interp.hpp"
#include "plexp/params.hpp"

namespace plexp {

enum class ProfileKind { Gaussian, Lorentz, Tabulated };

// Initial density pair. Both analytic families obey n_i(x) = b * n_e(b x),
// which keeps the two species' total charge equal for any width ratio b;
// tabulated profiles inherit the same ion construction from the electron
// table.
class DensityProfile {
public:
    static DensityProfile gaussian(double b);
    static DensityProfile lorentz(double b);
    // Electron shape sampled on the half-line (x[0] == 0, strictly
    // increasing, positive values); extended evenly to x < 0.
    static DensityProfile tabulated(std::vector<double> x, std::vector<double> n, double b);

    ProfileKind kind() const { return kind_; }
    double b() const { return b_; }

    double ne0(double x) const;
    double ni0(double x) const;
    double dlog_ne0(double x) const; // d/dx ln ne0
    double dlog_ni0(double x) const;

    // Evaluation cap: beyond it the density underflows (Gaussian) or the
    // table ends; evaluators throw DomainExitError there.
    double x_cap() const { return cap_; }

    // One-sided cumulative integral of each species from 0 to x (odd in x).
    double charge_moment(double x) const; // int_0^x (ni0 - ne0) dz

private:
    DensityProfile() = default;
    void check_domain(double x) const;

    ProfileKind kind_ = ProfileKind::Gaussian;
    double b_ = 1.0;
    double cap_ = 0.0;
    std::shared_ptr<const math::MonotoneCubic> table_; // electron shape, x >= 0
};

// Background functions entering the symmetry generator. Plain callables so
// tests can assemble manufactured field sets without a density profile.
struct FieldFunctions {
    PlasmaParams params;
    ProfileKind kind = ProfileKind::Gaussian; // decay class of the densities
    std::function<double(double)> ne0, ni0, dlog_ne0, dlog_ni0;
    std::function<double(double)> p0;    // initial field, (1/eps) int_0^x (ni0 - ne0)
    std::function<double(double)> xi;    // -eps (dlog_ne0 + gamma^2 dlog_ni0)
    std::function<double(double)> dxi;   // d xi / dx
    std::function<double(double)> delta; // -p0 - eps dlog_ne0
    double xi_slope0 = 0.0;              // d xi/dx at the origin
    double x_cap = 0.0;

    double Omega0(double x) const; // sqrt(ni0(x)), the local ion-set plasma scale
};

FieldFunctions make_fields(const DensityProfile& profile, const PlasmaParams& params);

// Separable Maxwellian initial data, normalization carried verbatim from
// the density profiles (no 1/sqrt(2 pi) factor).
struct InitialDistributions {
    std::function<double(double, double)> g0; // electrons, (x, u)
    std::function<double(double, double)> f0; // ions, (x, w); gamma = 0 raises ColdIonLimit
};

InitialDistributions make_initial(const FieldFunctions& fields);

} // namespace plexp
