#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bipolar {

using cplx = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline const cplx I{0.0, 1.0};

// Error hierarchy. Numerical preconditions throw; diagnostics return reports.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct PoleProximityError : Error {
    using Error::Error;
};
struct NonConvergenceError : Error {
    using Error::Error;
};
struct DegenerateCurveError : Error {
    using Error::Error;
};
struct AdmissibilityError : Error {
    using Error::Error;
};
struct SingularSystemError : Error {
    using Error::Error;
};

inline double sqr(double x) { return x * x; }
inline cplx sqr(cplx x) { return x * x; }

// Gauss–Legendre nodes/weights on [-1,1], Newton iteration on P_n.
struct GaussRule {
    std::vector<double> x, w;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(PI * (i + 0.75) / (n + 0.5));
        double p0, p1, dp;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        r.x[i] = -t;
        r.x[n - 1 - i] = t;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
}

// integrate f over [a,b] with an n-point Gauss rule
template <class F>
auto gauss_integrate(F&& f, double a, double b, const GaussRule& g) {
    using R = decltype(f(a));
    R s{};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(mid + half * g.x[i]);
    return s * half;
}

// adaptive: split until two levels agree
template <class F>
auto gauss_adaptive(F&& f, double a, double b, const GaussRule& g, double tol, int depth = 0) {
    using R = decltype(f(a));
    R coarse = gauss_integrate(f, a, b, g);
    double m = 0.5 * (a + b);
    R fine = gauss_integrate(f, a, m, g) + gauss_integrate(f, m, b, g);
    if (std::abs(fine - coarse) < tol || depth > 24) return fine;
    return gauss_adaptive(f, a, m, g, tol / 2, depth + 1) +
           gauss_adaptive(f, m, b, g, tol / 2, depth + 1);
}

// (1/2pi i) * contour integral over |z - c| = r, trapezoid with n nodes.
// Spectrally accurate for integrands analytic in an annulus around the circle.
template <class F>
cplx circle_integral(F&& f, cplx c, double r, int n = 64) {
    cplx s = 0.0;
    for (int k = 0; k < n; ++k) {
        double th = 2 * PI * k / n;
        cplx z = c + r * std::exp(I * th);
        s += f(z) * (z - c);
    }
    return s / double(n);
}

// C1 bump: 1 on [0, r0], 0 on [r1, inf), quintic smoothstep in between.
inline double bump(double t, double r0, double r1) {
    if (t <= r0) return 1.0;
    if (t >= r1) return 0.0;
    double x = (t - r0) / (r1 - r0);
    return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

}  // namespace bipolar
