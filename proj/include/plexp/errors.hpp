#pragma once

#include <stdexcept>
#include <string>

namespace plexp {

// Thrown when an evaluation point leaves the region where a profile or
// orbit is defined (density underflow cap, table range, x-domain cap).
class DomainExitError : public std::domain_error {
public:
    DomainExitError(const std::string& what, double where)
        : std::domain_error(what), where_(where) {}
    double where() const noexcept { return where_; }

private:
    double where_;
};

// Iterative solver failed to reach its tolerance (Newton, Brent, ODE step
// control, adaptive quadrature). Carries the best estimate reached.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best)
        : std::runtime_error(what), best_(best) {}
    double best() const noexcept { return best_; }

private:
    double best_;
};

// Quadrature refused: integrand singular or oscillation unresolvable at
// the requested resolution.
class SingularQuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cold-ion limit: gamma = 0 makes the ion Maxwellian a delta sheet; the
// distribution evaluator cannot represent it pointwise.
class ColdIonLimit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace plexp
