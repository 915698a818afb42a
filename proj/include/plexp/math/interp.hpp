#pragma once

#include <vector>

namespace plexp::math {

// Shape-preserving piecewise cubic (Fritsch-Carlson slopes). Monotone data
// stays monotone; no overshoot between knots.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    // x strictly increasing, sizes equal and >= 2.
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    // Integral of the interpolant from x_front to x.
    double integral(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    std::vector<double> x_, y_, d_;   // knots, values, knot slopes
    std::vector<double> cum_;         // cumulative piece integrals
    std::size_t locate(double x) const;
};

} // namespace plexp::math
