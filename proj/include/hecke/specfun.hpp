#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hecke {

using cplx = std::complex<double>;

// All powers use the principal logarithm with the convention
// -pi <= arg z < pi (negative reals get arg = -pi, not +pi).
double principal_arg(cplx z);
cplx principal_log(cplx z);
cplx principal_pow(cplx z, cplx s);

// Signalled at poles of Gamma/Beta and of terminating 2F1 denominators.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what, cplx location = {})
        : std::runtime_error(what), location(location) {}
    cplx location;
};

// log Gamma (principal analytic branch) via Stirling with upward shift;
// reflection for Re z < 0.5. Relative accuracy ~1e-13 or better for
// |Re z|, |Im z| <= 50 away from poles.
cplx lgamma_c(cplx z);
cplx gamma_c(cplx z);           // throws PoleError at non-positive integers
cplx beta_c(cplx a, cplx b);    // Gamma(a)Gamma(b)/Gamma(a+b)

// Digamma / polygamma at positive integer argument (exact-ish series data
// for the near-pole expansions).
double digamma_int(int k);
double polygamma_int(int order, int k);  // order in 1..4

// 2F1[k, 1-k; c; z]: terminating finite sum of k terms (k >= 1).
// Throws PoleError if c in {0, -1, ..., -(k-2)}.
cplx hyp2f1_terminating(int k, cplx c, cplx z);

// Euler-integral evaluation of 2F1[a,b;c;z], Re c > Re b > 0, |arg(1-z)| < pi.
cplx hyp2f1_integral(cplx a, cplx b, cplx c, cplx z, double rel_tol = 1e-11);

// g(b, m; beta) = int_0^1 y^{b-1} (1 - beta y)^{-m} dy, analytically
// continued by n-fold integration by parts; valid for Re(b) + n > 0,
// with simple poles at b = 0, -1, ..., -(n-1).
cplx continued_euler_integral(cplx b, int m, cplx beta, int nfold, double rel_tol = 1e-11);

// (1/(s-2k+m)) * 2F1[m, s-2k+m; s-2k+m+1; beta] continued n-fold; this is
// g(s-2k+m, m; beta). Requires Re(s) > 2k - m - n.
cplx hyp2f1_continued(int m, cplx s, int two_k, cplx beta, int nfold);

// A 2F1 evaluation request with an explicit evaluator mode; each mode
// validates its own parameter regime.
struct Hyp2F1Request {
    enum class Mode { Terminating, IntegralRep, Continued };
    cplx a, b, c, z;
    Mode mode = Mode::IntegralRep;
    int nfold = 0;  // Continued only

    cplx evaluate() const;
};

}  // namespace hecke
