#pragma once

#include <functional>
#include <vector>

namespace plexp::math {

// RHS contract: fill dydt from (t, y); may throw DomainExitError, which the
// driver re-raises tagged with the last accepted time.
using OdeRhs = std::function<void(double t, const std::vector<double>& y, std::vector<double>& dydt)>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double initial_step = 0.0; // 0 = choose automatically
    double max_step = 0.0;     // 0 = unlimited
    long max_steps = 2000000;
    // Valid tolerance window; outside it the driver refuses to start.
    void validate() const;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evaluations = 0;
};

// Dense trajectory from an embedded Dormand-Prince 5(4) pair. Continuous
// output is the standard 4th-order interpolant of the pair, so sampled
// states carry the same accuracy order as the step sequence.
class Trajectory {
public:
    double t_begin() const { return t_nodes_.front(); }
    double t_end() const { return t_nodes_.back(); }
    std::size_t dimension() const { return dim_; }
    const std::vector<double>& times() const { return t_nodes_; }

    // State at the k-th accepted node.
    std::vector<double> node(std::size_t k) const;
    // Interpolated state anywhere inside [t_begin, t_end].
    std::vector<double> at(double t) const;
    void at(double t, std::vector<double>& out) const;

    const OdeStats& stats() const { return stats_; }

private:
    friend Trajectory integrate_ode(const OdeRhs&, std::vector<double>, double, double,
                                    const OdeOptions&);
    std::size_t dim_ = 0;
    std::vector<double> t_nodes_;        // accepted times, size m+1
    std::vector<double> coeff_;          // m blocks of 5*dim interpolation coefficients
    OdeStats stats_;
};

Trajectory integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                         const OdeOptions& opt = {});

} // namespace plexp::math
