#pragma once

#include <cstdint>

namespace plexp {

// Dimensionless bunch parameters.
//
//   eps    electron thermal excursion over bunch size (expansion parameter)
//   mu     sqrt of electron/ion mass ratio; tau = mu * t is the slow clock
//   gamma  ion/electron thermal velocity ratio
//   b      ion/electron width ratio of the initial profiles
//   Ti0    initial ion temperature in electron units (gamma^2 by definition,
//          kept as an explicit scale so diagnostics can report T/Ti0)
struct PlasmaParams {
    double eps = 0.1;
    double mu = 0.022360679774997897; // sqrt(1/2000)
    double gamma = 0.1;
    double b = 1.0;
    double Ti0 = 1.0;

    // Self-similar stretch rate nu^2 = 2 eps^2 (1 + b^2 gamma^2); the b = 1
    // case reduces to 2 eps^2 (1 + gamma^2).
    double nu2() const { return 2.0 * eps * eps * (1.0 + b * b * gamma * gamma); }

    // Throws std::invalid_argument when outside the validity region:
    // 0 < eps < 1, 0 <= mu < 1, 0 <= gamma <= 1, b > 0, Ti0 > 0.
    void validate() const;
};

} // namespace plexp
