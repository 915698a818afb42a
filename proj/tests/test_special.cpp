#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "plexp/math/special.hpp"

namespace pm = plexp::math;
using pm::normal_cdf;
using pm::normal_quantile;

// Reference values to 20+ digits (standard tables), frozen here so the
// implementation is pinned to the function, not to the platform libm.
TEST_CASE("erf reference values") {
    struct Ref { double x, v; };
    const Ref refs[] = {
        {0.1, 0.11246291601828489220},
        {0.5, 0.52049987781304653768},
        {1.0, 0.84270079294971486934},
        {1.5, 0.96610514647531072706},
        {2.0, 0.99532226501895273416},
        {3.0, 0.99997790950300141456},
    };
    for (const auto& r : refs) {
        CHECK(std::abs(pm::erf(r.x) - r.v) <= 5e-16 * r.v);
        CHECK(std::abs(pm::erf(-r.x) + r.v) <= 5e-16 * r.v);
    }
    CHECK(pm::erf(0.0) == 0.0);
}

TEST_CASE("erfc reference values including far tail") {
    CHECK(std::abs(pm::erfc(2.0) - 4.6777349810472658379e-3) <= 5e-15 * 4.7e-3);
    CHECK(std::abs(pm::erfc(5.0) - 1.5374597944280348502e-12) <= 1e-14 * 1.6e-12);
    CHECK(std::abs(pm::erfc(10.0) - 2.0884875837625447570e-45) <= 1e-13 * 2.1e-45);
    CHECK(pm::erfc(0.0) == 1.0);
    CHECK(std::abs(pm::erfc(-2.0) - (2.0 - 4.6777349810472658379e-3)) <= 1e-15 * 2.0);
}

// The C library erf/erfc on this platform is sub-ulp accurate; a dense scan
// against it catches any coefficient transcription slip at once.
TEST_CASE("erf/erfc agree with libm across the full range") {
    for (int i = 0; i <= 20000; ++i) {
        const double x = -10.0 + 20.0 * i / 20000.0;
        const double mine = pm::erf(x);
        const double ref = std::erf(x);
        CHECK(std::abs(mine - ref) <= 1e-14 * std::max(std::abs(ref), 1e-10));
    }
    for (int i = 0; i <= 5000; ++i) {
        const double x = 26.0 * i / 5000.0;
        const double mine = pm::erfc(x);
        const double ref = std::erfc(x);
        CHECK(std::abs(mine - ref) <= 2e-13 * std::max(ref, 1e-300));
    }
}

TEST_CASE("identities: erf + erfc = 1, oddness") {
    for (double x : {1e-20, 1e-5, 0.3, 0.46875, 0.469, 1.7, 3.9, 4.0, 4.1, 9.0}) {
        CHECK(std::abs(pm::erf(x) + pm::erfc(x) - 1.0) <= 2e-16);
        CHECK(pm::erf(-x) == -pm::erf(x));
    }
}

TEST_CASE("normal quantile inverts the CDF") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    // Phi^{-1}(0.975), the textbook 1.96 constant, to full precision.
    CHECK(std::abs(normal_quantile(0.975) - 1.9599639845400545435) <= 1e-12);
    for (double p : {1e-9, 1e-6, 1e-3, 0.02, 0.2, 0.5, 0.77, 0.999, 1.0 - 1e-7}) {
        const double x = normal_quantile(p);
        CHECK(std::abs(normal_cdf(x) - p) <= 1e-13 * std::max(p, 1e-6));
        // Upper-tail p is representable only to ~1e-16 absolute, which caps
        // the achievable x-space symmetry at ~1e-16 / pdf(x).
        const double pdf = std::exp(-0.5 * x * x) * 0.3989422804014327;
        const double sym_tol = std::max(1e-11, 4e-16 / pdf);
        CHECK(std::abs(normal_quantile(1.0 - p) + x) <= sym_tol);
    }
    CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}
