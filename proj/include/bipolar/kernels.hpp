#pragma once

// Bipolar Green's function, Cauchy kernel and the (2,-1)-Cauchy kernel on the
// three supported surfaces:
//
//   sphere:  G(p,q) = log 1/|p-q|,            C(p,q) = dp/(p-q)
//   torus:   G(p,q) = log|th1(p) th1(q) / th1(p-q)| - (2pi/Im tau) Im p Im q
//            C(p,q) = -(psi(p) - psi(p-q) + (2 pi i / Im tau) Im q) dp,
//            psi = th1'/th1
//   curve:   the torus kernels composed with the Abel map.
//
// C(.,q) has residue +1 at q and -1 at p_inf, purely imaginary periods.
// The (2,-1)-kernel (coefficient of du^2/dv):
//   C21(u,v;a) = th1'(0) th1(u-a)^2 th1(v)^2 th1(u-v+2a)
//              / ( th1(u-v) th1(v-a)^2 th1(u)^2 th1(2a) ).

#include <bipolar/curve.hpp>

#include <memory>

namespace bipolar {

enum class Chart { SphereZ, TorusU, CurveZ };

struct KernelValue {
    cplx value;
    Chart chart;
    int sheet = 0;  // meaningful for CurveZ only
};

struct Backend {
    enum Kind { Sphere, Torus, Curve } kind;
    std::optional<Lattice> lat;              // Torus
    std::shared_ptr<EllipticCurve> curve;    // Curve

    static Backend sphere() { return Backend{Sphere, std::nullopt, nullptr}; }
    static Backend torus(cplx tau) { return Backend{Torus, Lattice(tau), nullptr}; }
    static Backend on_curve(std::shared_ptr<EllipticCurve> c) {
        Backend b{Curve, c->lattice(), std::move(c)};
        return b;
    }

    const Lattice& lattice() const {
        if (!lat) throw DomainError("backend has no lattice");
        return *lat;
    }
};

inline constexpr double kPoleGuard = 1e-6;  // reduced-chart guard around poles

// ---- Green's function -------------------------------------------------------

inline double green_torus(cplx p, cplx q, const Lattice& L, double guard = kPoleGuard) {
    if (L.dist(p, q) < guard || L.dist0(p) < guard || L.dist0(q) < guard)
        throw PoleProximityError("bipolar_green: point within guard distance of a singularity");
    double v = std::log(std::abs(theta1(L.reduce(p), L) * theta1(L.reduce(q), L) /
                                 theta1(L.reduce_centered(p - q), L)));
    return v - (2.0 * PI / L.im()) * L.reduce(p).imag() * L.reduce(q).imag();
}

inline double bipolar_green(cplx p, cplx q, const Backend& b, double guard = kPoleGuard) {
    switch (b.kind) {
        case Backend::Sphere:
            if (std::abs(p - q) < guard)
                throw PoleProximityError("bipolar_green: p too close to q");
            return -std::log(std::abs(p - q));
        default:
            return green_torus(p, q, b.lattice(), guard);
    }
}

inline double bipolar_green(const CurvePoint& p, const CurvePoint& q, const Backend& b,
                            double guard = kPoleGuard) {
    if (b.kind != Backend::Curve) throw DomainError("curve-point green needs curve backend");
    return green_torus(b.curve->abel(p).u, b.curve->abel(q).u, b.curve->lattice(), guard);
}

// regular diagonal value of G(p,q) + log|p-q| as q -> p (chart of p)
inline double green_diagonal_regular(cplx p, const Backend& b) {
    switch (b.kind) {
        case Backend::Sphere:
            return 0.0;
        default: {
            const Lattice& L = b.lattice();
            cplx pr = L.reduce(p);
            cplx t = theta1(pr, L);
            return std::log(std::abs(t * t / theta1_prime0(L))) -
                   (2.0 * PI / L.im()) * sqr(pr.imag());
        }
    }
}

// ---- Cauchy kernel ----------------------------------------------------------

inline cplx cauchy_torus_coeff(cplx p, cplx q, const Lattice& L, double guard = kPoleGuard) {
    if (L.dist(p, q) < guard || L.dist0(p) < guard)
        throw PoleProximityError("cauchy_kernel: pole proximity");
    cplx iq = cplx(0.0, L.reduce(q).imag());
    return -(theta1_logderiv(p, L) - theta1_logderiv(p - q, L) + (2.0 * PI / L.im()) * iq);
}

inline KernelValue cauchy_kernel(cplx p, cplx q, const Backend& b, double guard = kPoleGuard) {
    if (b.kind == Backend::Sphere) {
        if (std::abs(p - q) < guard) throw PoleProximityError("cauchy_kernel: p ~ q");
        return {1.0 / (p - q), Chart::SphereZ, 0};
    }
    return {cauchy_torus_coeff(p, q, b.lattice(), guard), Chart::TorusU, 0};
}

// regular part of the torus Cauchy coefficient: C(p,q) - 1/(p-q) continued to p=q
inline cplx cauchy_torus_regular(cplx p, cplx q, const Lattice& L) {
    cplx d = L.reduce_centered(p - q);
    cplx iq = cplx(0.0, L.reduce(q).imag());
    cplx sing;
    if (std::abs(d) < 1e-9) {
        sing = 0.0;  // psi(x) - 1/x -> 0 as x -> 0 (theta1 odd)
    } else {
        sing = theta1_logderiv(p - q, L) - 1.0 / d;
    }
    return -(theta1_logderiv(p, L) + (2.0 * PI / L.im()) * iq) + sing;
}

// ---- (2,-1)-Cauchy kernel ---------------------------------------------------

inline cplx c21_torus_coeff(cplx u, cplx v, cplx a, const Lattice& L,
                            double guard = kPoleGuard) {
    if (L.dist(u, v) < guard || L.dist0(u) < guard || L.dist(v, a) < guard)
        throw PoleProximityError("c21_kernel: pole proximity");
    if (L.dist0(a) < guard || L.dist0(2.0 * a) < guard)
        throw DomainError("c21_kernel: parameter a on (or half-way to) the lattice");
    cplx tp0 = theta1_prime0(L);
    cplx num = tp0 * sqr(theta1(u - a, L)) * sqr(theta1(v, L)) * theta1(u - v + 2.0 * a, L);
    cplx den = theta1(u - v, L) * sqr(theta1(v - a, L)) * sqr(theta1(u, L)) * theta1(2.0 * a, L);
    return num / den;
}

inline KernelValue c21_kernel(cplx u, cplx v, cplx a, const Backend& b,
                              double guard = kPoleGuard) {
    if (b.kind == Backend::Sphere)
        throw DomainError("c21_kernel: not defined on the sphere backend");
    return {c21_torus_coeff(u, v, a, b.lattice(), guard), Chart::TorusU, 0};
}

// regular part c21(u,v;a) - 1/(u-v), continued to u=v
inline cplx c21_torus_regular(cplx u, cplx v, cplx a, const Lattice& L) {
    cplx d = L.reduce_centered(u - v);
    if (std::abs(d) < 1e-7) {
        // expand around u = v via a two-point symmetric difference
        double h = 1e-4;
        cplx e1 = c21_torus_coeff(v + h, v, a, L) - 1.0 / cplx(h);
        cplx e2 = c21_torus_coeff(v - h, v, a, L) + 1.0 / cplx(h);
        return 0.5 * (e1 + e2);
    }
    return c21_torus_coeff(u, v, a, L) - 1.0 / d;
}

// algebraic form on the curve, for p=(w,z), q=(wt,zt), a=(w0,z0):
//   ( (w+wt)/(z-zt) - (w0+wt)/(z0-zt) + ( w0'/(z0-zt) - (w0+wt)/(z0-zt)^2 )(z-z0) )
//   * dz^2/(2 w^2) * wt/dzt
// returned as the coefficient of dz^2/dzt in the curve chart.
inline KernelValue c21_kernel_algebraic(const CurvePoint& p, const CurvePoint& q,
                                        const CurvePoint& a, const EllipticCurve& X,
                                        double guard = 1e-8) {
    cplx z = p.z, zt = q.z, z0 = a.z;
    for (cplx bp : {cplx(0.0), cplx(X.x1), cplx(X.x2)}) {
        if (std::abs(z - bp) < guard || std::abs(zt - bp) < guard || std::abs(z0 - bp) < guard)
            throw PoleProximityError("c21_kernel_algebraic: branch-point proximity");
    }
    cplx w = X.w(p), wt = X.w(q), w0 = X.w(a);
    // w0' = d/dz sqrt(z(z-x1)(z-x2)) at z0 on a's sheet
    cplx w0p = w0 * 0.5 * (1.0 / z0 + 1.0 / (z0 - X.x1) + 1.0 / (z0 - X.x2));
    cplx term = (w + wt) / (z - zt) - (w0 + wt) / (z0 - zt) +
                (w0p / (z0 - zt) - (w0 + wt) / sqr(z0 - zt)) * (z - z0);
    cplx val = term / (2.0 * w * w) * wt;
    return {val, Chart::CurveZ, p.sheet};
}

// transport a torus-chart (2,-1) value to the curve chart at (p,q):
// value_z = value_u * (du/dz at p)^2 / (du/dz at q)
inline cplx c21_torus_to_curve(cplx val_u, const CurvePoint& p, const CurvePoint& q,
                               const EllipticCurve& X) {
    cplx jp = X.du_dz(p), jq = X.du_dz(q);
    return val_u * jp * jp / jq;
}

}  // namespace bipolar
