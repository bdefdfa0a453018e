#pragma once

// The genus-one curve  w^2 = z (z - x1)(z - x2)  with x1 < x2 < 0.
//
// Branch points {0, x1, x2, infinity}; branch cuts (-inf, x1] and [x2, 0].
// w on sheet 1 is the product of principal square roots
//   w1(z) = sqrt(z) sqrt(z - x1) sqrt(z - x2),
// which is positive for z > 0 and has exactly the two cuts above. Sheet 2
// carries -w1.
//
// The Abel map u(p) = (1/A) int_{p_inf}^p dz/(2w) identifies the curve with
// C/(Z + tau Z), tau = i B/A purely imaginary. Landmarks:
//   p_inf -> 0,  p0=(0,0) -> 1/2,  {p1,p2} -> {tau/2, tau/2 + 1/2},
//   C2 (z in [0,inf]) -> real circle, C1 (z in [x1,x2]) -> Im u = Im tau / 2.
//
// The inverse is evaluated through the theta-quotient parameterization
//   z(u) = Cz  theta1(u-1/2)^2 / theta1(u)^2,
//   w(u) = Cw  theta1(u-1/2) theta1(u-tau/2) theta1(u+1/2+tau/2) / theta1(u)^3,
// calibrated so that z(tau/2) = x1 and w matches sheet 1 along an anchor path.

#include <bipolar/theta.hpp>

#include <optional>

namespace bipolar {

struct CurvePoint {
    cplx z{0.0};
    int sheet{1};  // sheet 1: w > 0 for z > 0
    bool at_infinity{false};

    static CurvePoint infinity() {
        CurvePoint p;
        p.at_infinity = true;
        return p;
    }
};

class EllipticCurve {
  public:
    double x1, x2;

    EllipticCurve(double x1_, double x2_, double tol = 1e-12)
        : x1(x1_), x2(x2_), lattice_(cplx(0.0, 1.0)) {
        if (!(x1 < x2 && x2 < 0.0))
            throw DomainError("EllipticCurve: need x1 < x2 < 0");
        if (std::abs(x1 - x2) < tol || std::abs(x1) < tol || std::abs(x2) < tol)
            throw DegenerateCurveError("EllipticCurve: branch points too close");
        compute_periods();
        calibrate();
    }

    const Lattice& lattice() const { return lattice_; }
    cplx tau() const { return lattice_.tau; }
    double a_period() const { return A_; }

    // sheet-1 branch of w
    cplx w_sheet1(cplx z) const {
        return std::sqrt(z) * std::sqrt(z - x1) * std::sqrt(z - x2);
    }
    cplx w(const CurvePoint& p) const {
        if (p.at_infinity) throw DomainError("w at infinity");
        cplx v = w_sheet1(p.z);
        return p.sheet == 1 ? v : -v;
    }
    CurvePoint point(cplx z, int sheet) const {
        CurvePoint p;
        p.z = z;
        p.sheet = sheet;
        return p;
    }
    // antiholomorphic involution sigma(w,z) = (conj w, conj z)
    CurvePoint sigma(const CurvePoint& p) const {
        if (p.at_infinity) return p;
        return point(std::conj(p.z), p.sheet);
    }
    // hyperelliptic flip (w,z) -> (-w,z), i.e. u -> -u
    CurvePoint flip(const CurvePoint& p) const {
        if (p.at_infinity) return p;
        return point(p.z, 3 - p.sheet);
    }

    // ---- Abel map by path integration --------------------------------------

    TorusPoint abel(const CurvePoint& p) const {
        if (p.at_infinity) return TorusPoint(0.0, lattice_);
        cplx u = abel_raw(p.z, w(p));
        return TorusPoint(u, lattice_);
    }

    // ---- theta-quotient parameterization (the inverse route) ---------------

    cplx z_of_u(cplx u) const {
        const Lattice& L = lattice_;
        cplx t = theta1(u, L);
        cplx th = theta1(u - 0.5, L);
        return Cz_ * th * th / (t * t);
    }
    cplx w_of_u(cplx u) const {
        const Lattice& L = lattice_;
        cplx t = theta1(u, L);
        cplx a = theta1(u - 0.5, L);
        cplx b = theta1(u - 0.5 * tau(), L);
        cplx c = theta1(u + 0.5 + 0.5 * tau(), L);
        return Cw_ * a * b * c / (t * t * t);
    }
    // d log z / du and d log w / du (used by field machinery)
    cplx dlogz_du(cplx u) const {
        return 2.0 * theta1_logderiv(u - 0.5, lattice_) - 2.0 * theta1_logderiv(u, lattice_);
    }
    cplx dlogw_du(cplx u) const {
        const Lattice& L = lattice_;
        return theta1_logderiv(u - 0.5, L) + theta1_logderiv(u - 0.5 * tau(), L) +
               theta1_logderiv(u + 0.5 + 0.5 * tau(), L) - 3.0 * theta1_logderiv(u, L);
    }
    // dz/du at u (chart Jacobian of the Abel inverse)
    cplx dz_du(cplx u) const { return z_of_u(u) * dlogz_du(u); }
    // du/dz at a curve point: the normalized holomorphic differential dz/(2w) scaled by 1/A
    cplx du_dz(const CurvePoint& p) const { return 1.0 / (2.0 * w(p) * A_); }

    CurvePoint abel_inverse(cplx u, double tol = 1e-8) const {
        const Lattice& L = lattice_;
        if (L.dist0(u) < 1e-9) return CurvePoint::infinity();
        cplx z = z_of_u(u);
        cplx wv = w_of_u(u);
        // residual check on the curve equation
        cplx res = wv * wv - z * (z - x1) * (z - x2);
        double scale = std::max(1.0, std::abs(wv * wv));
        if (std::abs(res) > 1e-6 * scale)
            throw NonConvergenceError("abel_inverse: parameterization residual too large");
        cplx w1 = w_sheet1(z);
        int sheet = (std::abs(wv - w1) <= std::abs(wv + w1)) ? 1 : 2;
        (void)tol;
        return point(z, sheet);
    }

    // both preimages of a given z
    std::pair<CurvePoint, CurvePoint> fiber(cplx z) const {
        return {point(z, 1), point(z, 2)};
    }

  private:
    Lattice lattice_;
    double A_ = 0.0, B_ = 0.0;
    cplx Cz_{0.0}, Cw_{0.0};
    GaussRule g32_ = gauss_legendre(32);

    void compute_periods() {
        // A = int_0^inf dz / sqrt(z(z-x1)(z-x2)), substitution z = t^2 on [0,1],
        // z = 1/u^2 on [1, inf):
        auto fa1 = [&](double t) {
            return 2.0 / std::sqrt((t * t - x1) * (t * t - x2));
        };
        auto fa2 = [&](double u) {
            return 2.0 / std::sqrt((1.0 - x1 * u * u) * (1.0 - x2 * u * u));
        };
        // B = int_{x2}^0 dz / sqrt(-z(z-x1)(z-x2)), substitution z = x2 sin^2 th:
        auto fb = [&](double th) {
            double s = std::sin(th);
            return 2.0 / std::sqrt(x2 * s * s - x1);
        };
        A_ = gauss_adaptive(fa1, 0.0, 1.0, g32_, 1e-14) +
             gauss_adaptive(fa2, 0.0, 1.0, g32_, 1e-14);
        B_ = gauss_adaptive(fb, 0.0, PI / 2, g32_, 1e-14);
        lattice_ = Lattice(cplx(0.0, B_ / A_));
    }

    // Path integral of dz/(2w)/A from p0=(0,0) to (z_t, tracked w), plus 1/2.
    // First leg leaves z=0 with the sqrt singularity removed by z = z_m t^2;
    // remaining legs are straight segments with w tracked by continuity.
    // Returns u with the convention of the calibrated parameterization; the
    // caller fixes the overall sign by comparing tracked w with the target.
    cplx abel_raw(cplx z_t, cplx w_t) const {
        std::vector<cplx> way = route(z_t);
        // leg 0-> way[0] with substitution; s(z) = branch of sqrt((z-x1)(z-x2))
        cplx z1 = way[0];
        cplx s_prev = std::sqrt(cplx(-x1)) * std::sqrt(cplx(-x2));  // s(0) = +sqrt(x1 x2)
        cplx integral = 0.0;
        {
            int nseg = 64;
            cplx acc = 0.0;
            for (int k = 0; k < nseg; ++k) {
                double t0 = double(k) / nseg, t1 = double(k + 1) / nseg;
                for (size_t i = 0; i < g32_.x.size(); ++i) {
                    double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g32_.x[i];
                    cplx z = z1 * t * t;
                    cplx s = track_sqrt_pair(z, s_prev);
                    acc += g32_.w[i] * 0.5 * (t1 - t0) / s;
                }
                // keep branch continuity at segment joins
                s_prev = track_sqrt_pair(z1 * t1 * t1, s_prev);
            }
            integral += std::sqrt(z1) * acc;
        }
        cplx w_prev = s_prev * std::sqrt(z1);  // tracked w at way[0]
        for (size_t leg = 0; leg + 1 < way.size(); ++leg) {
            cplx a = way[leg], b = way[leg + 1];
            int nseg = 64;
            for (int k = 0; k < nseg; ++k) {
                cplx za = a + (b - a) * (double(k) / nseg);
                cplx zb = a + (b - a) * (double(k + 1) / nseg);
                for (size_t i = 0; i < g32_.x.size(); ++i) {
                    cplx z = 0.5 * (za + zb) + 0.5 * (zb - za) * g32_.x[i];
                    cplx wv = track_w(z, w_prev);
                    integral += g32_.w[i] * 0.5 * (zb - za) / (2.0 * wv);
                }
                w_prev = track_w(zb, w_prev);
            }
        }
        cplx u = 0.5 + integral / A_;
        // arrived on the tracked branch; flip if the target lies on the other one
        if (std::abs(w_prev - w_t) > std::abs(w_prev + w_t)) u = -u;
        return u;
    }

    // waypoints from 0 to z_t avoiding the cuts
    std::vector<cplx> route(cplx z_t) const {
        bool direct_ok = true;
        // the ray from 0 to z_t crosses a cut iff it runs along the negative real axis
        if (std::abs(z_t.imag()) < 1e-14 * std::max(1.0, std::abs(z_t.real()))) {
            if (z_t.real() < 0.0) {
                // target on the negative axis: fine if in (x1, x2) (the C1 gap) but the
                // ray still passes through the cut [x2, 0]
                direct_ok = z_t.real() > x2;
                if (z_t.real() <= x1) direct_ok = false;
            }
        } else if (z_t.real() < 0.0 && std::abs(z_t.imag()) < 1e-12) {
            direct_ok = false;
        }
        if (direct_ok) return {z_t};
        double r = std::max(1.0, std::abs(z_t));
        cplx wp = (z_t.imag() >= 0.0) ? cplx(0.0, r) : cplx(0.0, -r);
        return {wp, z_t};
    }

    // continuity tracking of sqrt((z-x1)(z-x2))
    cplx track_sqrt_pair(cplx z, cplx prev) const {
        cplx v = std::sqrt((z - x1) * (z - x2));
        return (std::abs(v - prev) <= std::abs(v + prev)) ? v : -v;
    }
    // continuity tracking of w
    cplx track_w(cplx z, cplx prev) const {
        cplx v = w_sheet1(z);
        return (std::abs(v - prev) <= std::abs(v + prev)) ? v : -v;
    }

    void calibrate() {
        const Lattice& L = lattice_;
        // z(u): zeros at 1/2 (double), poles at 0 (double); calibrate at u = tau/2 -> x1
        cplx th_half_tau = theta1(0.5 * tau(), L);
        cplx th_shift = theta1(0.5 * tau() - 0.5, L);
        Cz_ = x1 * th_half_tau * th_half_tau / (th_shift * th_shift);
        // leading coefficients: z ~ c2/u^2, w ~ c3/u^3 with c3^2 = c2^3
        cplx tp0 = theta1_prime0(L);
        cplx c2 = Cz_ * sqr(theta1(cplx(-0.5), L)) / sqr(tp0);
        cplx c3 = std::sqrt(c2 * c2 * c2);
        cplx denom = theta1(cplx(-0.5), L) * theta1(-0.5 * tau(), L) *
                     theta1(0.5 + 0.5 * tau(), L);
        Cw_ = c3 * tp0 * tp0 * tp0 / denom;
        // fix the sign of Cw by an anchor point on sheet 1
        CurvePoint anchor = point(cplx(1.0, 1.0), 1);
        cplx u_anchor = abel_raw(anchor.z, w(anchor));
        cplx w_param = w_of_u(u_anchor);
        if (std::abs(w_param - w(anchor)) > std::abs(w_param + w(anchor))) Cw_ = -Cw_;
        // consistency: z(u_anchor) must reproduce the anchor
        if (std::abs(z_of_u(u_anchor) - anchor.z) > 1e-7 * std::max(1.0, std::abs(anchor.z)))
            throw NonConvergenceError("EllipticCurve: Abel calibration failed");
    }
};

}  // namespace bipolar
