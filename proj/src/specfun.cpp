#include "hecke/specfun.hpp"

#include <cmath>

#include "hecke/quadrature.hpp"

namespace hecke {

double principal_arg(cplx z) {
    double a = std::arg(z);
    if (a == M_PI) a = -M_PI;  // convention: -pi <= arg < pi
    return a;
}

cplx principal_log(cplx z) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("principal_log of zero");
    return {std::log(std::abs(z)), principal_arg(z)};
}

cplx principal_pow(cplx z, cplx s) {
    if (z == cplx(0.0, 0.0)) {
        if (s.real() > 0) return {0.0, 0.0};
        throw std::domain_error("principal_pow: 0 to non-positive power");
    }
    return std::exp(s * principal_log(z));
}

namespace {

bool is_nonpositive_integer(cplx z, double tol = 0.0) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

// Stirling series for log Gamma, |z| large, Re z > 0. Bernoulli numbers
// B_2..B_16 over (2n)(2n-1).
cplx lgamma_stirling(cplx z) {
    static const double coef[] = {
        1.0 / 12.0,        -1.0 / 360.0,      1.0 / 1260.0,     -1.0 / 1680.0,
        1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0,      -3617.0 / 122400.0,
    };
    const cplx zi = 1.0 / z;
    const cplx zi2 = zi * zi;
    cplx sum = 0.0;
    cplx pw = zi;
    for (double c : coef) {
        sum += c * pw;
        pw *= zi2;
    }
    const double half_log_2pi = 0.91893853320467274178032973640562;
    return (z - 0.5) * std::log(z) - z + half_log_2pi + sum;
}

// log(sin(pi z)) without overflow for large |Im z| (the dominant
// exponential is factored out). Any 2*pi*i branch offset is harmless since
// consumers exponentiate.
cplx log_sin_pi(cplx z) {
    const double y = z.imag();
    if (std::abs(y) <= 20.0) {
        cplx s = std::sin(M_PI * z);
        if (s == cplx(0.0, 0.0)) throw PoleError("log_sin_pi at integer", z);
        return std::log(s);
    }
    const cplx ipz = cplx(0.0, M_PI) * z;
    if (y > 0)
        return -ipz + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * ipz));
    return ipz - std::log(cplx(0.0, 2.0)) + std::log(1.0 - std::exp(-2.0 * ipz));
}

}  // namespace

cplx lgamma_c(cplx z) {
    if (is_nonpositive_integer(z))
        throw PoleError("Gamma pole at non-positive integer", z);
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z), in log form.
        cplx lg1mz = lgamma_c(1.0 - z);
        return std::log(M_PI) - log_sin_pi(z) - lg1mz;
    }
    int shift = 0;
    cplx w = z;
    while (std::abs(w) < 20.0) {
        ++shift;
        w = z + static_cast<double>(shift);
    }
    cplx lg = lgamma_stirling(w);
    for (int i = 0; i < shift; ++i) lg -= std::log(z + static_cast<double>(i));
    return lg;
}

cplx gamma_c(cplx z) { return std::exp(lgamma_c(z)); }

cplx beta_c(cplx a, cplx b) {
    return std::exp(lgamma_c(a) + lgamma_c(b) - lgamma_c(a + b));
}

double digamma_int(int k) {
    if (k < 1) throw std::domain_error("digamma_int: k >= 1");
    const double euler = 0.57721566490153286060651209008240;
    double h = 0.0;
    for (int j = 1; j < k; ++j) h += 1.0 / j;
    return -euler + h;
}

double polygamma_int(int order, int k) {
    if (k < 1 || order < 1 || order > 4) throw std::domain_error("polygamma_int: bad args");
    static const double zetas[] = {0.0, 0.0,
                                   1.6449340668482264364724151666460,   // zeta(2)
                                   1.2020569031595942853997381615114,   // zeta(3)
                                   1.0823232337111381915160036965412,   // zeta(4)
                                   1.0369277551433699263313654864570};  // zeta(5)
    double tail = zetas[order + 1];
    for (int j = 1; j < k; ++j) tail -= 1.0 / std::pow(static_cast<double>(j), order + 1);
    double fact = 1.0;
    for (int j = 2; j <= order; ++j) fact *= j;
    double sgn = (order % 2 == 1) ? 1.0 : -1.0;
    return sgn * fact * tail;
}

cplx hyp2f1_terminating(int k, cplx c, cplx z) {
    if (k < 1) throw std::domain_error("hyp2f1_terminating: k >= 1 required");
    cplx sum = 1.0;
    cplx term = 1.0;
    for (int n = 0; n < k - 1; ++n) {
        cplx cn = c + static_cast<double>(n);
        if (std::abs(cn) == 0.0)
            throw PoleError("terminating 2F1: zero denominator parameter", c);
        term *= (static_cast<double>(k + n) * static_cast<double>(1 - k + n)) /
                (cn * static_cast<double>(n + 1)) * z;
        sum += term;
    }
    return sum;
}

cplx hyp2f1_integral(cplx a, cplx b, cplx c, cplx z, double rel_tol) {
    if (!(c.real() > b.real() && b.real() > 0.0))
        throw std::domain_error("hyp2f1_integral requires Re(c) > Re(b) > 0");
    if (z.real() >= 1.0 && std::abs(z.imag()) == 0.0)
        throw std::domain_error("hyp2f1_integral requires |arg(1-z)| < pi");
    // Endpoint substitutions: y = u^r at 0 when Re b < 1, 1-y = v^q at 1 when
    // Re(c-b) < 1, splitting at 1/2. The singular factor is always evaluated
    // from the exact small quantity (y or 1-y), never via cancellation.
    const cplx bm1 = b - 1.0;
    const cplx cmb1 = c - b - 1.0;
    auto integrand = [&](double y, double one_minus_y) -> cplx {
        return principal_pow(y, bm1) * principal_pow(one_minus_y, cmb1) *
               principal_pow(1.0 - y * z, -a);
    };
    int r = b.real() >= 1.0 ? 1 : static_cast<int>(std::ceil(2.0 / b.real()));
    int q = (c - b).real() >= 1.0 ? 1 : static_cast<int>(std::ceil(2.0 / (c - b).real()));
    auto left = [&](double u) -> cplx {  // y = u^r on [0, 1/2]
        double y = std::pow(u, r);
        if (y == 0.0) return 0.0;
        return integrand(y, 1.0 - y) * static_cast<double>(r) * std::pow(u, r - 1);
    };
    auto right = [&](double v) -> cplx {  // 1 - y = v^q on [1/2, 1]
        double omy = std::pow(v, q);
        if (omy == 0.0) return 0.0;
        return integrand(1.0 - omy, omy) * static_cast<double>(q) * std::pow(v, q - 1);
    };
    double ul = std::pow(0.5, 1.0 / r);
    double vl = std::pow(0.5, 1.0 / q);
    cplx I = integrate_adaptive(left, 0.0, ul, rel_tol) +
             integrate_adaptive(right, 0.0, vl, rel_tol);
    return std::exp(lgamma_c(c) - lgamma_c(b) - lgamma_c(c - b)) * I;
}

cplx continued_euler_integral(cplx b, int m, cplx beta, int nfold, double rel_tol) {
    if ((b.real() + nfold) <= 0.0)
        throw std::domain_error("continued_euler_integral: Re(b) + n must be positive");
    if (beta == cplx(0.0, 0.0)) {
        if (std::abs(b) == 0.0) throw PoleError("continued_euler_integral: pole at b = 0", b);
        return 1.0 / b;
    }
    // Boundary terms (j = 1..n) plus the remaining integral:
    //   sum_j (-1)^{j-1} beta^{j-1} (1-beta)^{-(m+j-1)} (m)_{j-1} / (b)_j
    //   + (-1)^n beta^n (m)_n / (b)_n * int_0^1 y^{b+n-1} (1-beta y)^{-m-n} dy
    cplx sum = 0.0;
    cplx poch_m = 1.0;  // (m)_{j-1}
    cplx poch_b = 1.0;  // (b)_j running product
    double sgn = 1.0;
    cplx beta_pow = 1.0;
    const cplx one_minus_beta = 1.0 - beta;
    for (int j = 1; j <= nfold; ++j) {
        cplx bj = b + static_cast<double>(j - 1);
        if (std::abs(bj) < 1e-300)
            throw PoleError("continued_euler_integral: pole of the continuation", b);
        poch_b *= bj;
        sum += sgn * beta_pow * principal_pow(one_minus_beta, -static_cast<double>(m + j - 1)) *
               poch_m / poch_b;
        poch_m *= static_cast<double>(m + j - 1);
        sgn = -sgn;
        beta_pow *= beta;
    }
    const cplx expo = b + static_cast<double>(nfold) - 1.0;
    const int mm = m + nfold;
    auto integrand = [&](double y) -> cplx {
        if (y == 0.0) return 0.0;
        return principal_pow(y, expo) * principal_pow(1.0 - beta * y, -static_cast<double>(mm));
    };
    // substitution for the y -> 0 endpoint when Re(expo) < 0
    double re = expo.real();
    int r = re >= 0.0 ? 1 : static_cast<int>(std::ceil(2.0 / (re + 1.0)));
    cplx I;
    if (r == 1) {
        I = integrate_adaptive(integrand, 0.0, 1.0, rel_tol);
    } else {
        auto sub = [&](double u) -> cplx {
            double y = std::pow(u, r);
            if (y == 0.0) return 0.0;
            return integrand(y) * static_cast<double>(r) * std::pow(u, r - 1);
        };
        I = integrate_adaptive(sub, 0.0, 1.0, rel_tol);
    }
    return sum + sgn * beta_pow * poch_m / poch_b * I;
}

cplx Hyp2F1Request::evaluate() const {
    switch (mode) {
        case Mode::Terminating: {
            // b must be a non-positive integer 1-k; a must equal k
            double br = std::round(b.real());
            if (std::abs(b.imag()) > 0.0 || br > 0.0 || b.real() != br)
                throw std::domain_error("Hyp2F1Request: terminating mode needs b in {0,-1,-2,...}");
            int k = 1 - static_cast<int>(br);
            if (std::abs(a - cplx(static_cast<double>(k), 0.0)) > 0.0)
                throw std::domain_error("Hyp2F1Request: terminating mode expects a = 1 - b");
            return hyp2f1_terminating(k, c, z);
        }
        case Mode::IntegralRep:
            return hyp2f1_integral(a, b, c, z);
        case Mode::Continued: {
            // request shape 2F1[m, b; b+1; z] evaluated as b * g(b, m; z)
            double mr = std::round(a.real());
            if (std::abs(a.imag()) > 0.0 || mr < 1.0 || a.real() != mr)
                throw std::domain_error("Hyp2F1Request: continued mode needs integer a = m >= 1");
            if (std::abs(c - b - 1.0) > 1e-12)
                throw std::domain_error("Hyp2F1Request: continued mode needs c = b + 1");
            return b * continued_euler_integral(b, static_cast<int>(mr), z, nfold);
        }
    }
    throw std::logic_error("Hyp2F1Request: bad mode");
}

cplx hyp2f1_continued(int m, cplx s, int two_k, cplx beta, int nfold) {
    if (std::abs(beta.real()) > 1e-14 * std::abs(beta))
        throw std::domain_error("hyp2f1_continued: beta must be purely imaginary");
    cplx b = s - static_cast<double>(two_k) + static_cast<double>(m);
    if (b.real() + nfold <= 0.0)
        throw std::domain_error("hyp2f1_continued requires Re(s) > 2k - m - n");
    return continued_euler_integral(b, m, beta, nfold);
}

}  // namespace hecke
