#include "plexp/math/special.hpp"

#include <cmath>
#include <stdexcept>

namespace plexp::math {

// Rational minimax approximations after W. J. Cody, "Rational Chebyshev
// approximation for the error function", Math. Comp. 23 (1969). Three
// regions: |x| <= 0.46875 (erf directly), 0.46875 < |x| <= 4 and |x| > 4
// (erfc with the exp(-x^2) factor split to avoid argument-squaring loss).

namespace {

constexpr double kThresh = 0.46875;
constexpr double kInvSqrtPi = 5.6418958354775628695e-1;

constexpr double A[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                         3.77485237685302021e2, 3.20937758913846947e3,
                         1.85777706184603153e-1};
constexpr double B[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                         1.28261652607737228e3, 2.84423683343917062e3};

constexpr double C[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                         6.61191906371416295e1,  2.98635138197400131e2,
                         8.81952221241769090e2,  1.71204761263407058e3,
                         2.05107837782607147e3,  1.23033935479799725e3,
                         2.15311535474403846e-8};
constexpr double D[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                         5.37181101862009858e2, 1.62138957456669019e3,
                         3.29079923573345963e3, 4.36261909014324716e3,
                         3.43936767414372164e3, 1.23033935480374942e3};

constexpr double P[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                         1.25781726111229246e-1, 1.60837851487422766e-2,
                         6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double Q[5] = {2.56852019228982242e0,  1.87295284992346047e0,
                         5.27905102951428412e-1, 6.05183413124413191e-2,
                         2.33520497626869185e-3};

// erfc(y) for y > kThresh; the exp(-y^2) factor is evaluated as
// exp(-ysq^2) * exp(-(y-ysq)(y+ysq)) with ysq = trunc(16 y)/16 so the
// squared argument keeps full precision.
double erfc_tail(double y) {
    double result;
    if (y <= 4.0) {
        double xnum = C[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + C[i]) * y;
            xden = (xden + D[i]) * y;
        }
        result = (xnum + C[7]) / (xden + D[7]);
    } else {
        if (y >= 26.6) return 0.0;
        const double z = 1.0 / (y * y);
        double xnum = P[5] * z;
        double xden = z;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + P[i]) * z;
            xden = (xden + Q[i]) * z;
        }
        result = z * (xnum + P[4]) / (xden + Q[4]);
        result = (kInvSqrtPi - result) / y;
    }
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * result;
}

double erf_core(double x) {
    const double y = std::abs(x);
    if (y <= kThresh) {
        const double z = y > 1.11e-16 ? y * y : 0.0;
        double xnum = A[4] * z;
        double xden = z;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + A[i]) * z;
            xden = (xden + B[i]) * z;
        }
        return x * (xnum + A[3]) / (xden + B[3]);
    }
    const double r = 1.0 - erfc_tail(y);
    return x < 0.0 ? -r : r;
}

} // namespace

double erf(double x) { return erf_core(x); }

double erfc(double x) {
    const double y = std::abs(x);
    if (y <= kThresh) return 1.0 - erf_core(x);
    const double tail = erfc_tail(y);
    return x < 0.0 ? 2.0 - tail : tail;
}

double normal_cdf(double x) { return 0.5 * erfc(-x * 0.7071067811865475244); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    // Bisection to ~1e-12 in x, then Newton polish. Interval [-40, 40]
    // covers every p representable in double.
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 46; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    constexpr double kInvSqrt2Pi = 0.3989422804014326779;
    for (int i = 0; i < 4; ++i) {
        const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
        if (pdf <= 0.0) break;
        x -= (normal_cdf(x) - p) / pdf;
    }
    return x;
}

} // namespace plexp::math
