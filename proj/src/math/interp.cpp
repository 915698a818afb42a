#include "plexp/math/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plexp/errors.hpp"

namespace plexp::math {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need >= 2 knots, equal-sized arrays");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");

    d_.assign(n, 0.0);
    std::vector<double> h(n - 1), slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        slope[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
        d_[0] = d_[1] = slope[0];
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (slope[i - 1] * slope[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
            }
        }
        // One-sided three-point ends, clamped to preserve shape (PCHIP rule).
        auto end_slope = [](double h0, double h1, double s0, double s1) {
            double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
            if (d * s0 <= 0.0)
                d = 0.0;
            else if (s0 * s1 < 0.0 && std::abs(d) > 3.0 * std::abs(s0))
                d = 3.0 * s0;
            return d;
        };
        d_[0] = end_slope(h[0], h[1], slope[0], slope[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], slope[n - 2], slope[n - 3]);
    }

    cum_.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double c2 = (3.0 * slope[i] - 2.0 * d_[i] - d_[i + 1]) / h[i];
        const double c3 = (d_[i] + d_[i + 1] - 2.0 * slope[i]) / (h[i] * h[i]);
        cum_[i + 1] = cum_[i] + h[i] * (y_[i] + h[i] * (d_[i] / 2.0 + h[i] * (c2 / 3.0 + h[i] * c3 / 4.0)));
    }
}

std::size_t MonotoneCubic::locate(double x) const {
    const double span = x_.back() - x_.front();
    if (x < x_.front() || x > x_.back()) {
        if (x >= x_.front() - 1e-12 * span && x <= x_.back() + 1e-12 * span) {
            x = std::clamp(x, x_.front(), x_.back());
        } else {
            throw DomainExitError("MonotoneCubic: query outside knot range", x);
        }
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i > 0) --i;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double s = (y_[i + 1] - y_[i]) / h;
    const double c2 = (3.0 * s - 2.0 * d_[i] - d_[i + 1]) / h;
    const double c3 = (d_[i] + d_[i + 1] - 2.0 * s) / (h * h);
    const double t = x - x_[i];
    return y_[i] + t * (d_[i] + t * (c2 + t * c3));
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double s = (y_[i + 1] - y_[i]) / h;
    const double c2 = (3.0 * s - 2.0 * d_[i] - d_[i + 1]) / h;
    const double c3 = (d_[i] + d_[i + 1] - 2.0 * s) / (h * h);
    const double t = x - x_[i];
    return d_[i] + t * (2.0 * c2 + t * 3.0 * c3);
}

double MonotoneCubic::integral(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double s = (y_[i + 1] - y_[i]) / h;
    const double c2 = (3.0 * s - 2.0 * d_[i] - d_[i + 1]) / h;
    const double c3 = (d_[i] + d_[i + 1] - 2.0 * s) / (h * h);
    const double t = x - x_[i];
    return cum_[i] + t * (y_[i] + t * (d_[i] / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0)));
}

} // namespace plexp::math
