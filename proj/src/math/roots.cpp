#include "plexp/math/roots.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "plexp/errors.hpp"

namespace plexp::math {

double brent(const std::function<double(double)>& f, double a, double b,
             double x_tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("brent: bracket does not change sign");

    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = e = m; // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b; fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = e = b - a;
        }
    }
    throw ConvergenceError("brent: iteration limit reached", b);
}

void expand_bracket(const std::function<double(double)>& f, double a, double& b,
                    double cap, double& fa, double& fb) {
    fa = f(a);
    fb = f(b);
    while (fa * fb > 0.0) {
        const double step = (b - a) * 1.6;
        double next = b + step;
        if ((step > 0.0 && next > cap) || (step < 0.0 && next < cap)) next = cap;
        if (next == b)
            throw ConvergenceError("expand_bracket: cap reached without sign change", b);
        b = next;
        fb = f(b);
        if (b == cap && fa * fb > 0.0)
            throw ConvergenceError("expand_bracket: cap reached without sign change", b);
    }
}

void tridiag_solve(std::vector<double> lower, std::vector<double> diag,
                   std::vector<double> upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
        throw std::invalid_argument("tridiag_solve: inconsistent sizes");
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) throw std::runtime_error("tridiag_solve: zero pivot");
        const double w = lower[i - 1] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0) throw std::runtime_error("tridiag_solve: zero pivot");
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace plexp::math
