#include "plexp/math/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plexp/errors.hpp"

namespace plexp::math {

void OdeOptions::validate() const {
    if (!(rel_tol > 1e-14 && rel_tol < 1e-3) || !(abs_tol > 1e-16 && abs_tol < 1e-3))
        throw std::invalid_argument("OdeOptions: tolerances outside the supported window");
    if (max_steps <= 0) throw std::invalid_argument("OdeOptions: max_steps must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// 5th-minus-4th order error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights for the 4th-order continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

} // namespace

std::vector<double> Trajectory::node(std::size_t k) const {
    std::vector<double> out(dim_);
    if (k + 1 == t_nodes_.size()) {
        // Last node: evaluate the final step's interpolant at theta = 1.
        at(t_nodes_.back(), out);
        return out;
    }
    const double* blk = coeff_.data() + 5 * dim_ * k;
    std::copy(blk, blk + dim_, out.begin());
    return out;
}

void Trajectory::at(double t, std::vector<double>& out) const {
    const double lo = std::min(t_nodes_.front(), t_nodes_.back());
    const double hi = std::max(t_nodes_.front(), t_nodes_.back());
    const double slack = 1e-10 * (hi - lo) + 1e-300;
    if (t < lo - slack || t > hi + slack)
        throw std::out_of_range("Trajectory::at: time outside integration range");
    t = std::clamp(t, lo, hi);

    // Locate the step containing t (nodes are monotone in either direction).
    const bool fwd = t_nodes_.back() >= t_nodes_.front();
    std::size_t k;
    if (fwd) {
        auto it = std::upper_bound(t_nodes_.begin(), t_nodes_.end(), t);
        k = static_cast<std::size_t>(it - t_nodes_.begin());
    } else {
        auto it = std::upper_bound(t_nodes_.begin(), t_nodes_.end(), t, std::greater<double>());
        k = static_cast<std::size_t>(it - t_nodes_.begin());
    }
    if (k > 0) --k;
    if (k + 2 > t_nodes_.size()) k = t_nodes_.size() - 2;

    const double h = t_nodes_[k + 1] - t_nodes_[k];
    const double theta = (t - t_nodes_[k]) / h;
    const double th1 = 1.0 - theta;
    const double* r = coeff_.data() + 5 * dim_ * k;
    out.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const double r1 = r[i], r2 = r[dim_ + i], r3 = r[2 * dim_ + i], r4 = r[3 * dim_ + i],
                     r5 = r[4 * dim_ + i];
        out[i] = r1 + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)));
    }
}

std::vector<double> Trajectory::at(double t) const {
    std::vector<double> out(dim_);
    at(t, out);
    return out;
}

Trajectory integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                         const OdeOptions& opt) {
    opt.validate();
    const std::size_t n = y0.size();
    if (n == 0) throw std::invalid_argument("integrate_ode: empty state");
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    Trajectory traj;
    traj.dim_ = n;
    traj.t_nodes_.push_back(t0);
    if (span == 0.0) {
        // Degenerate request: one zero-length "step" so sampling works.
        traj.t_nodes_.push_back(t0);
        traj.coeff_.assign(5 * n, 0.0);
        std::copy(y0.begin(), y0.end(), traj.coeff_.begin());
        return traj;
    }

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y1(n);
    double t = t0;
    double last_good = t0;

    auto call = [&](double tt, const std::vector<double>& yy, std::vector<double>& out) {
        try {
            rhs(tt, yy, out);
        } catch (const DomainExitError& e) {
            throw DomainExitError(std::string(e.what()) + " (last accepted t = " +
                                      std::to_string(last_good) + ")",
                                  e.where());
        }
        ++traj.stats_.rhs_evaluations;
    };

    call(t, y0, k1);

    // Starting step: conservative norm-based guess, clipped by max_step.
    double h;
    if (opt.initial_step > 0.0) {
        h = opt.initial_step;
    } else {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sk = opt.abs_tol + opt.rel_tol * std::abs(y0[i]);
            dnf += (k1[i] / sk) * (k1[i] / sk);
            dny += (y0[i] / sk) * (y0[i] / sk);
        }
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 * span : 0.01 * std::sqrt(dny / dnf);
        h = std::min(h, span);
    }
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

    constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
    constexpr double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
    double facold = 1e-4;
    bool last = false;

    while (true) {
        if (traj.stats_.accepted + traj.stats_.rejected >= opt.max_steps)
            throw ConvergenceError("integrate_ode: step budget exhausted", t);
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
            throw ConvergenceError("integrate_ode: step size underflow", t);
        if ((t + dir * h - t1) * dir > 0.0) {
            h = std::abs(t1 - t);
            last = true;
        } else {
            last = false;
        }
        const double hs = dir * h;

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y0[i] + hs * a21 * k1[i];
        call(t + c2 * hs, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y0[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        call(t + c3 * hs, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y0[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        call(t + c4 * hs, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y0[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        call(t + c5 * hs, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y0[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                    a65 * k5[i]);
        call(t + hs, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            y1[i] = y0[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                  a76 * k6[i]);
        call(t + hs, y1, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sk = opt.abs_tol + opt.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
            const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * k7[i]);
            err += (ei / sk) * (ei / sk);
        }
        err = std::sqrt(err / static_cast<double>(n));

        const double fac11 = std::pow(err, expo1);
        if (err <= 1.0) {
            // Accept: emit dense coefficients for [t, t+hs].
            const std::size_t base = traj.coeff_.size();
            traj.coeff_.resize(base + 5 * n);
            double* r = traj.coeff_.data() + base;
            for (std::size_t i = 0; i < n; ++i) {
                const double ydiff = y1[i] - y0[i];
                const double bspl = hs * k1[i] - ydiff;
                r[i] = y0[i];
                r[n + i] = ydiff;
                r[2 * n + i] = bspl;
                r[3 * n + i] = ydiff - hs * k7[i] - bspl;
                r[4 * n + i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                     d6 * k6[i] + d7 * k7[i]);
            }
            t += hs;
            last_good = t;
            traj.t_nodes_.push_back(t);
            ++traj.stats_.accepted;
            std::swap(y0, y1);
            std::swap(k1, k7);
            if (last) break;
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(facc2, std::min(facc1, fac / safe));
            facold = std::max(err, 1e-4);
            h = h / fac;
            if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
        } else {
            ++traj.stats_.rejected;
            h = h / std::min(facc1, fac11 / safe);
            last = false;
        }
    }
    return traj;
}

} // namespace plexp::math
