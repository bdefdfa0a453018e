#pragma once

// Jacobi theta_1 with lattice periods 1 and tau, plus lattice/torus-point
// arithmetic. Series in the convention
//   theta1(z) = 2 sum_{k>=0} (-1)^k q^{(k+1/2)^2} sin((2k+1) pi z),  q = e^{i pi tau},
// which is the paired form of the bilateral sum and has no cancellation at
// small |z|. Quasi-periods:
//   theta1(z+1) = -theta1(z),   theta1(z+tau) = -e^{-i pi tau - 2 pi i z} theta1(z).

#include <bipolar/common.hpp>

namespace bipolar {

struct Lattice {
    cplx tau;

    explicit Lattice(cplx t) : tau(t) {
        if (!(t.imag() > 0.0)) throw DomainError("Lattice: Im tau must be positive");
    }

    double im() const { return tau.imag(); }

    // representative in [0,1) x [0, Im tau)
    cplx reduce(cplx u) const {
        double n = std::floor(u.imag() / tau.imag());
        cplx v = u - n * tau;
        v -= std::floor(v.real());
        // guard against roundoff landing exactly on the upper edges
        if (v.imag() >= tau.imag()) v -= tau;
        if (v.real() >= 1.0) v -= 1.0;
        if (v.real() < 0.0) v += 1.0;
        return v;
    }

    // representative with |Re| <= 1/2, |Im| <= Im tau / 2 (plus integer shifts m, n removed)
    cplx reduce_centered(cplx u, long* mm = nullptr, long* nn = nullptr) const {
        long n = std::lround(u.imag() / tau.imag());
        cplx v = u - double(n) * tau;
        long m = std::lround(v.real());
        v -= double(m);
        if (mm) *mm = m;
        if (nn) *nn = n;
        return v;
    }

    // distance to the nearest lattice point
    double dist0(cplx u) const { return std::abs(reduce_centered(u)); }
    // distance between two torus points
    double dist(cplx u, cplx v) const { return dist0(u - v); }
};

struct TorusPoint {
    cplx u;
    Lattice lattice;

    TorusPoint(cplx uu, Lattice lat) : u(lat.reduce(uu)), lattice(lat) {}
};

namespace detail {

inline int theta_terms(double imtau, double tol) {
    // Gaussian decay of q^{(k+1/2)^2}; +2 margin covers |Im z| <= Im tau / 2
    int K = int(std::ceil(std::sqrt(std::log(1.0 / tol) / (PI * imtau)))) + 2;
    return std::max(K, 3);
}

}  // namespace detail

// theta1 on the reduced strip (no lattice reduction applied)
inline cplx theta1_raw(cplx z, const Lattice& lat, double tol = 1e-15) {
    int K = detail::theta_terms(lat.im(), tol);
    cplx s = 0.0;
    double sign = 1.0;
    for (int k = 0; k <= K; ++k) {
        double kk = k + 0.5;
        cplx q_pow = std::exp(I * PI * lat.tau * (kk * kk));
        s += sign * q_pow * std::sin((2 * k + 1) * PI * z);
        sign = -sign;
    }
    return 2.0 * s;
}

inline cplx theta1_deriv_raw(cplx z, const Lattice& lat, double tol = 1e-15) {
    int K = detail::theta_terms(lat.im(), tol);
    cplx s = 0.0;
    double sign = 1.0;
    for (int k = 0; k <= K; ++k) {
        double kk = k + 0.5;
        cplx q_pow = std::exp(I * PI * lat.tau * (kk * kk));
        s += sign * q_pow * double(2 * k + 1) * std::cos((2 * k + 1) * PI * z);
        sign = -sign;
    }
    return 2.0 * PI * s;
}

// theta1 with lattice reduction; valid for any z (value may be huge far from
// the fundamental domain, as it must be).
inline cplx theta1(cplx z, const Lattice& lat, double tol = 1e-15) {
    long m, n;
    cplx z0 = lat.reduce_centered(z, &m, &n);
    cplx val = theta1_raw(z0, lat, tol);
    if (m == 0 && n == 0) return val;
    double par = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    cplx factor = par * std::exp(-I * PI * double(n) * double(n) * lat.tau -
                                 2.0 * PI * I * double(n) * z0);
    return factor * val;
}

inline cplx theta1_prime0(const Lattice& lat, double tol = 1e-15) {
    return theta1_deriv_raw(0.0, lat, tol);
}

// theta1'(z)/theta1(z); simple pole with residue 1 at each lattice point
inline cplx theta1_logderiv(cplx z, const Lattice& lat, double tol = 1e-15,
                            double guard = 1e-13) {
    long m, n;
    cplx z0 = lat.reduce_centered(z, &m, &n);
    if (std::abs(z0) < guard)
        throw PoleProximityError("theta1_logderiv: z within guard distance of the lattice");
    return theta1_deriv_raw(z0, lat, tol) / theta1_raw(z0, lat, tol) -
           2.0 * PI * I * double(n);
}

}  // namespace bipolar
