#include <bipolar/kernels.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace bipolar;

namespace {
cplx rand_point(std::mt19937& rng, const Lattice& L, double margin = 0.08) {
    std::uniform_real_distribution<double> ur(margin, 1.0 - margin);
    return cplx(ur(rng), ur(rng) * L.im());
}
// straight-segment integral of a coefficient function (for periods)
template <class F>
cplx segment_integral(F&& f, cplx a, cplx b, int nseg = 64) {
    GaussRule g = gauss_legendre(16);
    cplx s = 0.0;
    for (int k = 0; k < nseg; ++k) {
        cplx za = a + (b - a) * (double(k) / nseg);
        cplx zb = a + (b - a) * (double(k + 1) / nseg);
        for (size_t i = 0; i < g.x.size(); ++i) {
            cplx z = 0.5 * (za + zb) + 0.5 * (zb - za) * g.x[i];
            s += g.w[i] * 0.5 * (zb - za) * f(z);
        }
    }
    return s;
}
}  // namespace

TEST_CASE("green symmetry and double periodicity, 50 random pairs") {
    Backend b = Backend::torus(cplx(0, 2));
    const Lattice& L = b.lattice();
    std::mt19937 rng(11);
    double worst_sym = 0, worst_per = 0;
    for (int i = 0; i < 50; ++i) {
        cplx p = rand_point(rng, L), q = rand_point(rng, L);
        if (L.dist(p, q) < 0.05) continue;
        double g = bipolar_green(p, q, b);
        worst_sym = std::max(worst_sym, std::abs(g - bipolar_green(q, p, b)));
        worst_per = std::max(worst_per, std::abs(bipolar_green(p + 1.0, q, b) - g));
        worst_per = std::max(worst_per, std::abs(bipolar_green(p + L.tau, q, b) - g));
    }
    CHECK(worst_sym < 1e-10);
    CHECK(worst_per < 1e-10);
}

TEST_CASE("green local behavior near q and near p_inf") {
    Backend b = Backend::torus(cplx(0, 1));
    cplx q(0.31, 0.42);
    // G(p,q) + log|p-q| bounded along a shrinking sequence
    for (double h = 1e-2; h > 1e-5; h /= 4) {
        cplx p = q + h * std::exp(I * 0.7);
        double v = bipolar_green(p, q, b) + std::log(std::abs(p - q));
        CHECK(std::abs(v) < 10.0);
    }
    // G(p,q) - log|p| bounded as p -> 0
    for (double h = 1e-2; h > 1e-5; h /= 4) {
        cplx p = h * std::exp(I * 1.2);
        double v = bipolar_green(p, q, b) - std::log(std::abs(p));
        CHECK(std::abs(v) < 10.0);
    }
}

TEST_CASE("cauchy kernel residues") {
    Backend b = Backend::torus(cplx(0, 1.1));
    cplx q(0.4, 0.61);
    // residue +1 at q (64-point trapezoid, radius 1e-2)
    cplx r1 = circle_integral(
        [&](cplx p) { return cauchy_kernel(p, q, b).value; }, q, 1e-2, 64);
    CHECK(std::abs(r1 - 1.0) < 1e-8);
    // residue -1 at p_inf = 0
    cplx r2 = circle_integral(
        [&](cplx p) { return cauchy_kernel(p, q, b).value; }, cplx(0.0), 1e-2, 64);
    CHECK(std::abs(r2 + 1.0) < 1e-8);
    // doubling the radius as a certification check
    cplx r1b = circle_integral(
        [&](cplx p) { return cauchy_kernel(p, q, b).value; }, q, 2e-2, 128);
    CHECK(std::abs(r1b - r1) < 1e-10);
}

TEST_CASE("cauchy kernel has purely imaginary periods") {
    Backend b = Backend::torus(cplx(0, 1.3));
    const Lattice& L = b.lattice();
    cplx q(0.37, 0.55);
    cplx base(0.11, 0.13);  // start point keeping both cycles away from poles
    auto f = [&](cplx p) { return cauchy_kernel(p, q, b).value; };
    cplx per_a = segment_integral(f, base, base + 1.0);
    cplx per_b = segment_integral(f, base, base + L.tau);
    CHECK(std::abs(per_a.real()) < 1e-8);
    CHECK(std::abs(per_b.real()) < 1e-8);
}

TEST_CASE("cauchy kernel on the sphere is 1/(p-q)") {
    Backend b = Backend::sphere();
    CHECK(std::abs(cauchy_kernel(cplx(2.0, 1.0), cplx(0.5), b).value -
                   1.0 / cplx(1.5, 1.0)) < 1e-15);
}

TEST_CASE("c21 kernel normalization (residue 1 on the diagonal)") {
    Lattice L(cplx(0, 1));
    Backend b = Backend::torus(L.tau);
    cplx v(0.23, 0.31), a(0.4, 0.5);
    // (u-v) c21 -> 1 along a shrinking sequence
    for (double h = 1e-2; h > 2e-5; h /= 4) {
        cplx u = v + h * std::exp(I * 0.3);
        cplx val = c21_kernel(u, v, a, b).value;
        CHECK(std::abs((u - v) * val - 1.0) < 20 * h);
    }
    // contour residue at u=v
    cplx res = circle_integral(
        [&](cplx u) { return c21_kernel(u, v, a, b).value; }, v, 1e-2, 64);
    CHECK(std::abs(res - 1.0) < 1e-8);
}

TEST_CASE("c21 zero/pole structure") {
    Lattice L(cplx(0, 1));
    Backend b = Backend::torus(L.tau);
    cplx u0(0.23, 0.57), v0(0.61, 0.37), a(0.15, 0.5);

    SECTION("double zero at v = 0") {
        for (double h = 1e-2; h > 1e-4; h /= 4) {
            cplx v = h * std::exp(I * 0.9);
            cplx val = c21_kernel(u0, v, a, b).value;
            CHECK(std::abs(val / (v * v)) < 1e3);   // value/v^2 bounded
            CHECK(std::abs(val / v) < 1e3 * h);      // value/v -> 0
        }
    }
    SECTION("double zero at u = a") {
        for (double h = 1e-2; h > 1e-4; h /= 4) {
            cplx u = a + h * std::exp(I * 0.4);
            cplx val = c21_kernel(u, v0, a, b).value;
            CHECK(std::abs(val / sqr(u - a)) < 1e3);
            CHECK(std::abs(val / (u - a)) < 1e3 * h);
        }
    }
    SECTION("simple zero at u = v - 2a") {
        cplx uz = v0 - 2.0 * a;
        cplx val0 = c21_kernel(uz, v0, a, b).value;
        CHECK(std::abs(val0) < 1e-10);
    }
    SECTION("poles of v -> c21 sum to u + 2a against lattice congruence") {
        // poles at v=u (simple), v=a (double); zero at v = u+2a (simple), v=0 (double)
        // Abel: u + 2a = u + 2a, and zeros 2*0 + (u+2a); here we verify the zero
        // location numerically on a small circle
        cplx vz = u0 + 2.0 * a;
        CHECK(std::abs(c21_kernel(u0, vz, a, b).value) < 1e-9);
    }
}

TEST_CASE("c21 double periodicity in both arguments") {
    Lattice L(cplx(0, 0.9));
    Backend b = Backend::torus(L.tau);
    cplx u(0.21, 0.33), v(0.64, 0.52), a(0.3, 0.45);
    cplx val = c21_kernel(u, v, a, b).value;
    CHECK(std::abs(c21_kernel(u + 1.0, v, a, b).value - val) < 1e-10 * std::abs(val));
    CHECK(std::abs(c21_kernel(u + L.tau, v, a, b).value - val) < 1e-9 * std::abs(val));
    CHECK(std::abs(c21_kernel(u, v + 1.0, a, b).value - val) < 1e-10 * std::abs(val));
    CHECK(std::abs(c21_kernel(u, v + L.tau, a, b).value - val) < 1e-9 * std::abs(val));
}

TEST_CASE("c21 theta vs algebraic on curve (-2,-1) at 20 random triples") {
    auto X = std::make_shared<EllipticCurve>(-2.0, -1.0);
    Backend b = Backend::on_curve(X);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(-2.8, 2.8);
    int tested = 0;
    double worst = 0.0;
    for (int i = 0; i < 200 && tested < 20; ++i) {
        cplx zp(ur(rng), ur(rng)), zq(ur(rng), ur(rng));
        if (std::abs(zp.imag()) < 0.15 || std::abs(zq.imag()) < 0.15) continue;
        if (std::abs(zp - zq) < 0.3) continue;
        CurvePoint p = X->point(zp, 1 + (i % 2));
        CurvePoint q = X->point(zq, 1 + ((i / 2) % 2));
        // a on the bounded oval C1
        std::uniform_real_distribution<double> ua(0.05, 0.45);
        CurvePoint a = X->abel_inverse(cplx(ua(rng)) + 0.5 * X->tau());
        cplx u = X->abel(p).u, v = X->abel(q).u, au = X->abel(a).u;
        cplx theta_val = c21_torus_coeff(u, v, au, X->lattice());
        cplx transported = c21_torus_to_curve(theta_val, p, q, *X);
        cplx alg = c21_kernel_algebraic(p, q, a, *X).value;
        double rel = std::abs(transported - alg) / std::max(1e-12, std::abs(alg));
        worst = std::max(worst, rel);
        ++tested;
    }
    REQUIRE(tested == 20);
    CHECK(worst < 1e-8);
}

TEST_CASE("algebraic c21 residue at q in the curve chart") {
    EllipticCurve X(-2.0, -1.0);
    CurvePoint p0 = X.point(cplx(0.8, 0.9), 1);
    CurvePoint a = X.abel_inverse(cplx(0.21) + 0.5 * X.tau());
    // residue in zt around z of p0 on the same sheet: integrate over a small circle
    cplx z0 = p0.z;
    cplx res = circle_integral(
        [&](cplx zt) {
            return c21_kernel_algebraic(X.point(zt, 1), p0, a, X).value;
        },
        z0, 1e-2, 64);
    // c21(q, p; a) as a function of q=(zt): simple pole at q=p with residue -1
    // in (u-v); in the z-chart with roles (p fixed as the du^2 slot) the residue
    // of u->c21(u,v) at u=v is +1. Here we integrate in the first argument:
    CHECK(std::abs(res - 1.0) < 1e-7);
}
