#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "plexp/errors.hpp"
#include "plexp/math/quad.hpp"
#include "plexp/profiles.hpp"

using namespace plexp;

namespace {

PlasmaParams base_params(double b) {
    PlasmaParams p;
    p.eps = 0.1;
    p.mu = std::sqrt(1.0 / 2000.0);
    p.gamma = 0.1;
    p.b = b;
    return p;
}

DensityProfile gaussian_table_profile(double b) {
    // Sample the Gaussian shape so the tabulated path can be cross-checked
    // against the closed-form one.
    std::vector<double> x, n;
    for (int i = 0; i <= 1200; ++i) {
        const double xx = 12.0 * i / 1200.0;
        x.push_back(xx);
        n.push_back(std::exp(-xx * xx) / std::sqrt(M_PI));
    }
    return DensityProfile::tabulated(x, n, b);
}

} // namespace

TEST_CASE("peak densities carry the family normalizations") {
    const auto g = DensityProfile::gaussian(1.0);
    const auto l = DensityProfile::lorentz(1.0);
    CHECK(g.ne0(0.0) == doctest::Approx(0.5641895835477562869).epsilon(1e-15));
    CHECK(l.ne0(0.0) == doctest::Approx(0.3183098861837906715).epsilon(1e-15));
    const auto g2 = DensityProfile::gaussian(1.01);
    CHECK(g2.ni0(0.0) == doctest::Approx(1.01 * 0.5641895835477562869).epsilon(1e-15));
    // Unit total electron charge for both families.
    auto mass = [](const DensityProfile& p, double cap) {
        return math::integrate([&](double x) { return p.ne0(x); }, -cap, cap).value;
    };
    CHECK(mass(g, 8.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mass(l, 1e4) == doctest::Approx(1.0).epsilon(1e-4)); // algebraic tail
}

TEST_CASE("initial field closed forms match the defining integral") {
    for (double b : {1.0, 1.01, 1.0661}) {
        for (ProfileKind kind : {ProfileKind::Gaussian, ProfileKind::Lorentz}) {
            const auto prof = kind == ProfileKind::Gaussian ? DensityProfile::gaussian(b)
                                                            : DensityProfile::lorentz(b);
            const auto fields = make_fields(prof, base_params(b));
            double scale = 0.0;
            for (int i = 0; i <= 40; ++i)
                scale = std::max(scale, std::abs(fields.p0(-10.0 + 0.5 * i)));
            scale = std::max(scale, 1e-3);
            for (int i = 0; i <= 40; ++i) {
                const double x = -10.0 + 0.5 * i;
                const double quad =
                    math::integrate([&](double z) { return prof.ni0(z) - prof.ne0(z); }, 0.0, x)
                        .value /
                    0.1;
                CHECK(std::abs(fields.p0(x) - quad) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("field identity delta + p0 + eps dlog_ne0 = 0 for every kind") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> ux(-9.0, 9.0);
    auto check_profile = [&](const DensityProfile& prof, double b) {
        const auto fields = make_fields(prof, base_params(b));
        for (int i = 0; i < 100; ++i) {
            double x = ux(rng);
            if (std::abs(x) > prof.x_cap()) x = std::copysign(prof.x_cap() * 0.9, x);
            const double lhs = fields.delta(x) + fields.p0(x) + 0.1 * fields.dlog_ne0(x);
            CHECK(std::abs(lhs) <= 1e-11);
        }
    };
    check_profile(DensityProfile::gaussian(1.01), 1.01);
    check_profile(DensityProfile::lorentz(1.0661), 1.0661);
    check_profile(gaussian_table_profile(1.01), 1.01);
}

TEST_CASE("xi is odd with positive slope at the origin; derivative is consistent") {
    for (double b : {1.0, 1.0661}) {
        for (ProfileKind kind : {ProfileKind::Gaussian, ProfileKind::Lorentz}) {
            const auto prof = kind == ProfileKind::Gaussian ? DensityProfile::gaussian(b)
                                                            : DensityProfile::lorentz(b);
            const auto fields = make_fields(prof, base_params(b));
            CHECK(fields.xi_slope0 > 0.0);
            for (double x : {0.2, 0.9, 1.7, 3.4, 6.0}) {
                CHECK(fields.xi(-x) == doctest::Approx(-fields.xi(x)).epsilon(1e-14));
                const double h = 1e-5;
                const double num = (fields.xi(x + h) - fields.xi(x - h)) / (2.0 * h);
                CHECK(std::abs(num - fields.dxi(x)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("gaussian closed forms: xi linear, b=1 field vanishes") {
    const auto fields = make_fields(DensityProfile::gaussian(1.0), base_params(1.0));
    // xi = 2 eps x (1 + gamma^2): at x = 1, eps = gamma = 0.1 this is 0.202.
    CHECK(fields.xi(1.0) == doctest::Approx(0.202).epsilon(1e-14));
    CHECK(fields.dxi(2.5) == doctest::Approx(0.202).epsilon(1e-14));
    // Equal-width bunches are charge-balanced everywhere.
    CHECK(fields.p0(0.7) == 0.0);
    CHECK(fields.delta(1.0) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("lorentz xi closed form") {
    const PlasmaParams p = [] {
        auto q = base_params(1.0661);
        q.gamma = 0.001;
        return q;
    }();
    const auto fields = make_fields(DensityProfile::lorentz(1.0661), p);
    for (double x : {0.3, 1.0, 2.2}) {
        const double g2b2 = p.gamma * p.gamma * p.b * p.b;
        const double want =
            2.0 * p.eps * x * (1.0 / (1.0 + x * x) + g2b2 / (1.0 + p.b * p.b * x * x));
        CHECK(fields.xi(x) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("tabulated profile tracks its analytic source") {
    // Shape-preserving interpolation on h = 0.01 gives ~h^3 values and ~h^2
    // derivatives; the tolerances below are those orders, not roundoff.
    const auto tab = gaussian_table_profile(1.01);
    const auto ref = DensityProfile::gaussian(1.01);
    for (double x : {-4.0, -1.3, 0.0, 0.4, 2.7, 5.0}) {
        CHECK(tab.ne0(x) == doctest::Approx(ref.ne0(x)).epsilon(1e-5));
        CHECK(tab.ni0(x) == doctest::Approx(ref.ni0(x)).epsilon(1e-5));
        CHECK(std::abs(tab.dlog_ne0(x) - ref.dlog_ne0(x)) <=
              1e-3 * std::max(1.0, std::abs(ref.dlog_ne0(x))));
    }
}

TEST_CASE("domain caps raise domain errors") {
    const auto g = DensityProfile::gaussian(1.0);
    CHECK_THROWS_AS(g.ne0(27.0), DomainExitError);
    const auto tab = gaussian_table_profile(1.0);
    CHECK_THROWS_AS(tab.ne0(12.5), DomainExitError);
    CHECK_THROWS_AS(DensityProfile::tabulated({0.0, 1.0, 2.0, 3.0}, {1.0, 0.5, -0.1, 0.2}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(DensityProfile::gaussian(-1.0), std::invalid_argument);
}

TEST_CASE("maxwellian initial data keeps the verbatim normalization") {
    const auto fields = make_fields(DensityProfile::gaussian(1.0), base_params(1.0));
    const auto init = make_initial(fields);
    CHECK(init.g0(0.5, 0.0) == doctest::Approx(fields.ne0(0.5)).epsilon(1e-15));
    CHECK(init.g0(0.5, 1.0) == doctest::Approx(fields.ne0(0.5) * std::exp(-0.5)).epsilon(1e-14));
    // Velocity mass is sqrt(2 pi) n (no normalizing prefactor by design).
    const double um = math::integrate([&](double u) { return init.g0(0.0, u); }, -9.0, 9.0).value;
    CHECK(um == doctest::Approx(std::sqrt(2.0 * M_PI) * fields.ne0(0.0)).epsilon(1e-10));
    const double wm = math::integrate([&](double w) { return init.f0(0.0, w); }, -2.0, 2.0).value;
    CHECK(wm ==
          doctest::Approx(std::sqrt(2.0 * M_PI) * 0.1 * fields.ni0(0.0)).epsilon(1e-10));

    PlasmaParams cold = base_params(1.0);
    cold.gamma = 0.0;
    const auto cold_init = make_initial(make_fields(DensityProfile::gaussian(1.0), cold));
    CHECK_THROWS_AS(cold_init.f0(0.0, 0.0), ColdIonLimit);
    CHECK_NOTHROW(cold_init.g0(0.0, 0.0));
}

TEST_CASE("plasma parameter validation") {
    PlasmaParams p = base_params(1.0);
    CHECK_NOTHROW(p.validate());
    CHECK(p.nu2() == doctest::Approx(2.0 * 0.01 * 1.01).epsilon(1e-15));
    p.eps = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = base_params(1.0);
    p.mu = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = base_params(1.0);
    p.gamma = 2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
