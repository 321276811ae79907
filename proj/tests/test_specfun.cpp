#include <doctest.h>

#include <random>

#include "hecke/specfun.hpp"

using namespace hecke;

namespace {

std::mt19937_64 rng(2024);
double uniform(double lo, double hi) { return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53); }

}  // namespace

TEST_CASE("principal branch convention: arg(-1) = -pi exactly") {
    CHECK(principal_arg(cplx(-1.0, 0.0)) == -M_PI);
    CHECK(principal_arg(cplx(2.0, 0.0)) == 0.0);
    // (-1)^{1/2} = e^{-i pi / 2} = -i under this convention
    cplx r = principal_pow(cplx(-1.0, 0.0), 0.5);
    CHECK(r.real() == doctest::Approx(0.0));
    CHECK(r.imag() == doctest::Approx(-1.0));
}

TEST_CASE("gamma special values") {
    CHECK(std::abs(gamma_c(0.5) - std::sqrt(M_PI)) < 1e-14);
    CHECK(std::abs(gamma_c(5.0) - 24.0) < 1e-12);
    CHECK(std::abs(beta_c(1.0, 1.0) - 1.0) < 1e-14);
    CHECK(std::abs(beta_c(2.5, 1.5) - gamma_c(2.5) * gamma_c(1.5) / gamma_c(4.0)) < 1e-14);
    CHECK_THROWS_AS(gamma_c(cplx(0.0, 0.0)), PoleError);
    CHECK_THROWS_AS(gamma_c(cplx(-3.0, 0.0)), PoleError);
}

TEST_CASE("gamma reflection identity on random points") {
    for (int trial = 0; trial < 200; ++trial) {
        cplx s(uniform(-50, 50), uniform(-50, 50));
        if (std::abs(s.real() - std::round(s.real())) < 0.05 && std::abs(s.imag()) < 0.05) continue;
        cplx lhs = gamma_c(s) * gamma_c(1.0 - s) * std::sin(M_PI * s) / M_PI;
        CHECK(std::abs(lhs - 1.0) < 1e-11);
    }
}

TEST_CASE("terminating 2F1") {
    CHECK(hyp2f1_terminating(1, cplx(0.7, 0.3), cplx(5.0, -2.0)) == cplx(1.0, 0.0));
    cplx v = hyp2f1_terminating(3, 2.0, 0.5);
    CHECK(std::abs(v) < 1e-15);  // 1 - 1.5 + 0.5
    CHECK_THROWS_AS(hyp2f1_terminating(3, cplx(0.0, 0.0), 0.5), PoleError);
    CHECK_THROWS_AS(hyp2f1_terminating(3, cplx(-1.0, 0.0), 0.5), PoleError);
}

TEST_CASE("Euler integral evaluation") {
    CHECK(std::abs(hyp2f1_integral(0.0, 1.0, 2.0, cplx(0.3, 0.4)) - 1.0) < 1e-12);
    CHECK(std::abs(hyp2f1_integral(cplx(1.2, 0.5), 1.0, 2.0, 0.0) - 1.0) < 1e-12);
    // 2F1[1,1;2;z] = -log(1-z)/z
    cplx v = hyp2f1_integral(1.0, 1.0, 2.0, 0.5);
    CHECK(std::abs(v - 2.0 * std::log(2.0)) < 1e-10);
    CHECK_THROWS_AS(hyp2f1_integral(1.0, 2.0, 1.5, 0.5), std::domain_error);
}

TEST_CASE("terminating vs integral evaluators agree on the overlap") {
    // 2F1[k,1-k;c;z] = 2F1[1-k,k;c;z]; the b = k slot admits the Euler
    // integral for Re c > k.
    for (int k : {1, 2, 3, 5}) {
        for (int trial = 0; trial < 10; ++trial) {
            cplx c(k + uniform(0.3, 3.0), uniform(-1.0, 1.0));
            cplx z(uniform(-0.6, 0.6), uniform(-0.5, 0.5));
            cplx term = hyp2f1_terminating(k, c, z);
            cplx integ = hyp2f1_integral(1.0 - k, static_cast<double>(k), c, z);
            CHECK(std::abs(term - integ) <= 1e-10 * std::max(1.0, std::abs(term)));
        }
    }
}

TEST_CASE("transformation: 2F1[a,b;c;z] = (1-z)^{c-a-b} 2F1[c-a,c-b;c;z]") {
    for (int trial = 0; trial < 60; ++trial) {
        cplx b(uniform(0.2, 1.4), uniform(-0.7, 0.7));
        cplx c(b.real() + uniform(0.3, 2.0), uniform(-0.7, 0.7));
        cplx a(uniform(-1.0, 2.0), uniform(-0.8, 0.8));
        if (!((c - a).real() > 0.3)) continue;  // RHS needs Re(c) > Re(c-b) > 0... and b-slot c-b
        cplx z(uniform(-0.6, 0.6), uniform(-0.6, 0.6));
        if ((c - b).real() <= 0.2 || (c - b).real() >= c.real() - 0.05) continue;
        cplx lhs = hyp2f1_integral(a, b, c, z);
        cplx rhs = principal_pow(1.0 - z, c - a - b) * hyp2f1_integral(c - a, c - b, c, z);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("transformation: two-term 1/z connection formula") {
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 50; ++trial) {
        double ra = uniform(0.5, 1.0), rb = uniform(0.5, 1.0);
        if (std::abs(ra - rb) < 0.05) continue;
        cplx a(ra, uniform(-0.4, 0.4)), b(rb, uniform(-0.4, 0.4));
        double rc_lo = std::max(ra, rb) + 0.1, rc_hi = std::min(ra, rb) + 0.9;
        if (rc_lo >= rc_hi) continue;
        cplx c(uniform(rc_lo, rc_hi), uniform(-0.4, 0.4));
        double r = uniform(1.5, 4.0), th = uniform(0.3, M_PI - 0.3);
        cplx z = r * std::exp(cplx(0.0, th)) * (trial % 2 ? 1.0 : -1.0);
        if (z.real() > 0 && std::abs(z.imag()) < 0.2) continue;
        cplx lhs = hyp2f1_integral(a, b, c, z);
        cplx t1 = principal_pow(-z, -a) * std::exp(lgamma_c(c) + lgamma_c(b - a) - lgamma_c(c - a) - lgamma_c(b)) *
                  hyp2f1_integral(a, 1.0 + a - c, 1.0 + a - b, 1.0 / z);
        cplx t2 = principal_pow(-z, -b) * std::exp(lgamma_c(c) + lgamma_c(a - b) - lgamma_c(c - b) - lgamma_c(a)) *
                  hyp2f1_integral(b, 1.0 + b - c, 1.0 + b - a, 1.0 / z);
        cplx rhs = t1 + t2;
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("continued Euler integral") {
    // beta = 0 reduces to 1/b exactly
    CHECK(continued_euler_integral(cplx(0.37, 1.2), 2, 0.0, 3) == 1.0 / cplx(0.37, 1.2));
    // n = 0 agrees with the direct integral where both converge
    for (int trial = 0; trial < 20; ++trial) {
        cplx b(uniform(0.3, 2.0), uniform(-1.0, 1.0));
        int m = 1 + static_cast<int>(rng() % 3);
        cplx beta(0.0, uniform(-3.0, 3.0));
        cplx direct = continued_euler_integral(b, m, beta, 0);
        cplx cont = continued_euler_integral(b, m, beta, 4);
        CHECK(std::abs(direct - cont) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
    // continuation consistency: n and n+1 agree where both are valid
    for (int trial = 0; trial < 20; ++trial) {
        cplx b(uniform(-1.7, -0.3), uniform(0.2, 1.0));  // off the pole line
        int m = 1 + static_cast<int>(rng() % 3);
        cplx beta(0.0, uniform(-3.0, 3.0));
        cplx v2 = continued_euler_integral(b, m, beta, 2);
        cplx v3 = continued_euler_integral(b, m, beta, 3);
        CHECK(std::abs(v2 - v3) <= 1e-9 * std::max(1.0, std::abs(v2)));
    }
}

TEST_CASE("hyp2f1_continued interface") {
    // matches (1/(s-2k+m)) 2F1[m, s-2k+m; s-2k+m+1; beta] computed by the
    // Euler integral when Re(s-2k+m) > 0
    int two_k = 6, m = 2;
    cplx s(5.3, 0.8);  // b = s - 6 + 2 = 1.3 + 0.8i
    cplx beta(0.0, -1.7);
    cplx b = s - 6.0 + 2.0;
    cplx via_2f1 = hyp2f1_integral(static_cast<double>(m), b, b + 1.0, beta) / b;
    cplx cont = hyp2f1_continued(m, s, two_k, beta, 3);
    CHECK(std::abs(via_2f1 - cont) <= 1e-9 * std::max(1.0, std::abs(cont)));
    CHECK_THROWS_AS(hyp2f1_continued(m, cplx(0.5, 0.0), two_k, beta, 0), std::domain_error);
    CHECK_THROWS_AS(hyp2f1_continued(m, cplx(0.5, 0.0), two_k, cplx(0.3, 1.0), 8),
                    std::domain_error);  // beta not purely imaginary
}

TEST_CASE("request-style dispatch validates per-mode regimes") {
    Hyp2F1Request r;
    r.a = 3.0;
    r.b = -2.0;
    r.c = 2.0;
    r.z = 0.5;
    r.mode = Hyp2F1Request::Mode::Terminating;
    CHECK(std::abs(r.evaluate()) < 1e-15);
    r.b = -2.5;
    CHECK_THROWS_AS(r.evaluate(), std::domain_error);

    Hyp2F1Request e;
    e.a = 1.0;
    e.b = 1.0;
    e.c = 2.0;
    e.z = 0.5;
    e.mode = Hyp2F1Request::Mode::IntegralRep;
    CHECK(std::abs(e.evaluate() - 2.0 * std::log(2.0)) < 1e-10);
    e.b = 3.0;  // violates Re(c) > Re(b)
    CHECK_THROWS_AS(e.evaluate(), std::domain_error);

    Hyp2F1Request g;
    g.a = 2.0;
    g.b = cplx(1.3, 0.8);
    g.c = g.b + 1.0;
    g.z = cplx(0.0, -1.7);
    g.mode = Hyp2F1Request::Mode::Continued;
    g.nfold = 3;
    cplx direct = hyp2f1_integral(2.0, g.b, g.c, g.z);
    CHECK(std::abs(g.evaluate() - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("digamma and polygamma at integers") {
    const double euler = 0.5772156649015329;
    CHECK(digamma_int(1) == doctest::Approx(-euler));
    CHECK(digamma_int(3) == doctest::Approx(-euler + 1.5));
    CHECK(polygamma_int(1, 1) == doctest::Approx(M_PI * M_PI / 6.0));
    CHECK(polygamma_int(1, 2) == doctest::Approx(M_PI * M_PI / 6.0 - 1.0));
    CHECK(polygamma_int(2, 1) == doctest::Approx(-2.4041138063191885));  // -2 zeta(3)
}
