#pragma once

namespace plexp {

// One point of the extended group-orbit space. t is the fast clock, tau
// the slow clock, (x, u) electron position/velocity labels, w the ion
// velocity label, p the longitudinal field. g and f carry the distribution
// values transported unchanged along orbits; a is the group parameter.
struct PhasePoint {
    double a = 0.0;
    double t = 0.0;
    double tau = 0.0;
    double x = 0.0;
    double u = 0.0;
    double w = 0.0;
    double p = 0.0;
    double g = 0.0;
    double f = 0.0;
};

} // namespace plexp
